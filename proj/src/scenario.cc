// Copyright 2026 The loccbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "loccbench/scenario.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace loccbench {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &where, const std::string &what) {
    throw ScenarioError(where + ": " + what);
}

const json &require(const json &j, const std::string &key, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) {
        fail(where, "missing field '" + key + "'");
    }
    return j.at(key);
}

double as_number(const json &j, const std::string &where) {
    if (!j.is_number()) {
        fail(where, "expected a number");
    }
    return j.get<double>();
}

int as_int(const json &j, const std::string &where) {
    if (!j.is_number_integer()) {
        fail(where, "expected an integer");
    }
    return j.get<int>();
}

std::string as_string(const json &j, const std::string &where) {
    if (!j.is_string()) {
        fail(where, "expected a string");
    }
    return j.get<std::string>();
}

Complex as_complex(const json &j, const std::string &where) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(where, "expected [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Vector as_vector(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        fail(where, "expected a non-empty array of [re, im] pairs");
    }
    Vector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        v[i] = as_complex(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

Matrix as_matrix(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        fail(where, "expected a non-empty row-major nested array");
    }
    const size_t rows = j.size();
    size_t cols = 0;
    for (size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array()) {
            fail(where + "[" + std::to_string(r) + "]", "expected a row array");
        }
        if (r == 0) {
            cols = j[r].size();
        } else if (j[r].size() != cols) {
            fail(where + "[" + std::to_string(r) + "]", "ragged row");
        }
    }
    Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) {
            m(r, c) = as_complex(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

Party as_party(const json &j, const std::string &where) {
    std::string s = as_string(j, where);
    if (s == "A") {
        return Party::A;
    }
    if (s == "B") {
        return Party::B;
    }
    fail(where, "party must be \"A\" or \"B\"");
}

IntRange as_range(const json &j, const std::string &where) {
    if (j.is_number_integer()) {
        int v = j.get<int>();
        return {v, v};
    }
    if (!j.is_array() || j.size() != 2) {
        fail(where, "expected an integer or [min, max]");
    }
    IntRange r{as_int(j[0], where + "[0]"), as_int(j[1], where + "[1]")};
    if (r.min > r.max) {
        fail(where, "min exceeds max");
    }
    return r;
}

std::pair<int, int> as_dims(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2) {
        fail(where, "expected [d_A, d_B]");
    }
    int a = as_int(j[0], where + "[0]");
    int b = as_int(j[1], where + "[1]");
    if (a < 1 || b < 1) {
        fail(where, "dimensions must be positive");
    }
    return {a, b};
}

json complex_json(Complex c) {
    return json::array({c.real(), c.imag()});
}

json vector_json(const Vector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_json(v[i]));
    }
    return out;
}

json matrix_json(const Matrix &m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

json range_json(IntRange r) {
    if (r.min == r.max) {
        return r.min;
    }
    return json::array({r.min, r.max});
}

InstrumentSpec parse_instrument(const json &j, const std::string &where) {
    if (!j.is_object()) {
        fail(where, "expected an instrument object");
    }
    if (j.contains("basis")) {
        return NamedBasis{as_string(j.at("basis"), where + ".basis")};
    }
    if (j.contains("projective")) {
        const std::string p = where + ".projective";
        const json &proj = j.at("projective");
        const json &vectors = require(proj, "vectors", p);
        const json &labels = require(proj, "labels", p);
        if (!vectors.is_array() || vectors.empty()) {
            fail(p + ".vectors", "expected a non-empty array of vectors");
        }
        ProjectiveBasis basis;
        const size_t n = vectors.size();
        basis.vectors = Matrix(n, n);
        for (size_t k = 0; k < n; ++k) {
            const std::string w = p + ".vectors[" + std::to_string(k) + "]";
            Vector v = as_vector(vectors[k], w);
            if (static_cast<size_t>(v.size()) != n) {
                fail(w, "basis vectors must have one entry per basis element");
            }
            basis.vectors.col(k) = v;
        }
        if (!labels.is_array() || labels.size() != n) {
            fail(p + ".labels", "expected one label per vector");
        }
        for (size_t k = 0; k < n; ++k) {
            basis.labels.push_back(as_string(labels[k], p + ".labels[" + std::to_string(k) + "]"));
        }
        return basis;
    }
    if (j.contains("kraus")) {
        const json &list = j.at("kraus");
        if (!list.is_array() || list.empty()) {
            fail(where + ".kraus", "expected a non-empty array");
        }
        KrausList out;
        for (size_t k = 0; k < list.size(); ++k) {
            const std::string w = where + ".kraus[" + std::to_string(k) + "]";
            out.outcomes.push_back(
                {as_string(require(list[k], "label", w), w + ".label"), as_matrix(require(list[k], "matrix", w), w + ".matrix")});
        }
        return out;
    }
    fail(where, "instrument needs one of 'basis', 'projective', 'kraus'");
}

json instrument_json(const InstrumentSpec &spec) {
    return std::visit(
        [](const auto &s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NamedBasis>) {
                return {{"basis", s.name}};
            } else if constexpr (std::is_same_v<T, ProjectiveBasis>) {
                json vectors = json::array();
                for (Eigen::Index k = 0; k < s.vectors.cols(); ++k) {
                    vectors.push_back(vector_json(s.vectors.col(k)));
                }
                return {{"projective", {{"vectors", vectors}, {"labels", s.labels}}}};
            } else {
                json list = json::array();
                for (const auto &o : s.outcomes) {
                    list.push_back({{"label", o.label}, {"matrix", matrix_json(o.kraus)}});
                }
                return {{"kraus", list}};
            }
        },
        spec);
}

History parse_history(const json &j, const std::string &where) {
    if (!j.is_array()) {
        fail(where, "expected an array of outcome labels");
    }
    History h;
    for (size_t k = 0; k < j.size(); ++k) {
        h.push_back(as_string(j[k], where + "[" + std::to_string(k) + "]"));
    }
    return h;
}

Matrix random_unitary(std::mt19937_64 &rng, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            double re = gauss(rng);
            double im = gauss(rng);
            g(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        double mag = std::abs(r(k, k));
        if (mag > 0.0) {
            q.col(k) *= r(k, k) / mag;
        }
    }
    return q;
}

std::vector<std::string> index_labels(int d) {
    std::vector<std::string> out;
    for (int k = 0; k < d; ++k) {
        out.push_back(std::to_string(k));
    }
    return out;
}

}  // namespace

std::string_view scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::Ensemble:
            return "ensemble";
        case ScenarioKind::Protocol:
            return "protocol";
        case ScenarioKind::BellDiagonal:
            return "bell_diagonal";
        case ScenarioKind::Random:
            return "random";
    }
    return "ensemble";
}

Scenario parse_scenario(const json &j) {
    if (!j.is_object()) {
        fail("$", "scenario must be a JSON object");
    }
    Scenario s;
    if (j.contains("name")) {
        s.name = as_string(j.at("name"), "name");
    }
    std::string kind = as_string(require(j, "kind", "$"), "kind");
    if (kind == "ensemble") {
        s.kind = ScenarioKind::Ensemble;
    } else if (kind == "protocol") {
        s.kind = ScenarioKind::Protocol;
    } else if (kind == "bell_diagonal") {
        s.kind = ScenarioKind::BellDiagonal;
    } else if (kind == "random") {
        s.kind = ScenarioKind::Random;
    } else {
        fail("kind", "unknown scenario kind '" + kind + "'");
    }

    if (j.contains("dims")) {
        std::tie(s.dim_a, s.dim_b) = as_dims(j.at("dims"), "dims");
    }

    if (j.contains("measures")) {
        const json &m = j.at("measures");
        try {
            if (m.contains("input")) {
                s.measure_in = parse_measure(as_string(m.at("input"), "measures.input"));
            }
            if (m.contains("output")) {
                s.measure_out = parse_measure(as_string(m.at("output"), "measures.output"));
            }
        } catch (const ScenarioError &) {
            throw;
        } catch (const ValidationError &e) {
            fail("measures", e.what());
        }
    }
    if (j.contains("tolerances")) {
        const json &t = j.at("tolerances");
        if (t.contains("validation")) {
            s.validation_tol = as_number(t.at("validation"), "tolerances.validation");
        }
    }

    if (j.contains("members")) {
        const json &members = j.at("members");
        if (!members.is_array()) {
            fail("members", "expected an array");
        }
        for (size_t k = 0; k < members.size(); ++k) {
            const std::string w = "members[" + std::to_string(k) + "]";
            const json &m = members[k];
            double p = as_number(require(m, "probability", w), w + ".probability");
            if (m.contains("pure")) {
                s.members.push_back({p, as_vector(m.at("pure"), w + ".pure")});
            } else if (m.contains("matrix")) {
                s.members.push_back({p, as_matrix(m.at("matrix"), w + ".matrix")});
            } else {
                fail(w, "member needs 'pure' or 'matrix'");
            }
        }
    }

    if (j.contains("protocol")) {
        const json &p = j.at("protocol");
        if (p.contains("steps")) {
            const json &steps = p.at("steps");
            if (!steps.is_array()) {
                fail("protocol.steps", "expected an array");
            }
            for (size_t k = 0; k < steps.size(); ++k) {
                const std::string w = "protocol.steps[" + std::to_string(k) + "]";
                s.steps.push_back({as_party(require(steps[k], "party", w), w + ".party"),
                                   parse_instrument(require(steps[k], "instrument", w), w + ".instrument")});
            }
        }
        if (p.contains("overrides")) {
            const json &ov = p.at("overrides");
            if (!ov.is_array()) {
                fail("protocol.overrides", "expected an array");
            }
            for (size_t k = 0; k < ov.size(); ++k) {
                const std::string w = "protocol.overrides[" + std::to_string(k) + "]";
                s.overrides.push_back({parse_history(require(ov[k], "history", w), w + ".history"),
                                       as_party(require(ov[k], "party", w), w + ".party"),
                                       parse_instrument(require(ov[k], "instrument", w), w + ".instrument")});
            }
        }
    }

    if (j.contains("bell_diagonal")) {
        const json &b = j.at("bell_diagonal");
        BellDiagonalSpec spec;
        spec.d = as_int(require(b, "d", "bell_diagonal"), "bell_diagonal.d");
        const json &probs = require(b, "probs", "bell_diagonal");
        if (!probs.is_array()) {
            fail("bell_diagonal.probs", "expected an array");
        }
        for (size_t k = 0; k < probs.size(); ++k) {
            spec.probs.push_back(as_number(probs[k], "bell_diagonal.probs[" + std::to_string(k) + "]"));
        }
        s.bell = std::move(spec);
    }

    if (j.contains("random")) {
        const json &r = j.at("random");
        RandomSpec spec;
        if (r.contains("n_members")) {
            spec.n_members = as_range(r.at("n_members"), "random.n_members");
        }
        if (r.contains("dims")) {
            std::tie(spec.dim_a, spec.dim_b) = as_dims(r.at("dims"), "random.dims");
        }
        if (r.contains("protocol_depth")) {
            spec.protocol_depth = as_range(r.at("protocol_depth"), "random.protocol_depth");
        }
        if (r.contains("instrument_family")) {
            spec.instrument_family = as_string(r.at("instrument_family"), "random.instrument_family");
        }
        s.random = spec;
    }

    switch (s.kind) {
        case ScenarioKind::Ensemble:
        case ScenarioKind::Protocol:
            if (s.members.empty()) {
                fail("members", "scenario kind '" + kind + "' needs at least one member");
            }
            break;
        case ScenarioKind::BellDiagonal:
            if (!s.bell) {
                fail("bell_diagonal", "missing Bell-diagonal specification");
            }
            s.dim_a = s.dim_b = s.bell->d;
            break;
        case ScenarioKind::Random:
            if (!s.random) {
                s.random = RandomSpec{};
            }
            s.dim_a = s.random->dim_a;
            s.dim_b = s.random->dim_b;
            break;
    }
    return s;
}

Scenario parse_scenario_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ScenarioError(std::string("parse error: ") + e.what());
    }
    return parse_scenario(j);
}

Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError(path + ": cannot open scenario file");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

json to_json(const Scenario &s) {
    json j;
    j["name"] = s.name;
    j["kind"] = scenario_kind_name(s.kind);
    j["dims"] = json::array({s.dim_a, s.dim_b});
    j["measures"] = {{"input", measure_name(s.measure_in)}, {"output", measure_name(s.measure_out)}};
    j["tolerances"] = {{"validation", s.validation_tol}};
    if (!s.members.empty()) {
        json members = json::array();
        for (const auto &m : s.members) {
            json entry{{"probability", m.probability}};
            if (const Vector *v = std::get_if<Vector>(&m.state)) {
                entry["pure"] = vector_json(*v);
            } else {
                entry["matrix"] = matrix_json(std::get<Matrix>(m.state));
            }
            members.push_back(std::move(entry));
        }
        j["members"] = std::move(members);
    }
    if (!s.steps.empty() || !s.overrides.empty()) {
        json steps = json::array();
        for (const auto &st : s.steps) {
            steps.push_back({{"party", party_name(st.party)}, {"instrument", instrument_json(st.instrument)}});
        }
        json overrides = json::array();
        for (const auto &ov : s.overrides) {
            overrides.push_back({{"history", ov.history},
                                 {"party", party_name(ov.party)},
                                 {"instrument", instrument_json(ov.instrument)}});
        }
        j["protocol"] = {{"steps", steps}, {"overrides", overrides}};
    }
    if (s.bell) {
        j["bell_diagonal"] = {{"d", s.bell->d}, {"probs", s.bell->probs}};
    }
    if (s.random) {
        j["random"] = {{"n_members", range_json(s.random->n_members)},
                       {"dims", json::array({s.random->dim_a, s.random->dim_b})},
                       {"protocol_depth", range_json(s.random->protocol_depth)},
                       {"instrument_family", s.random->instrument_family}};
    }
    return j;
}

KrausInstrument build_instrument(const InstrumentSpec &spec, Party party, int local_dim) {
    if (const auto *named = std::get_if<NamedBasis>(&spec)) {
        Matrix basis;
        std::vector<std::string> labels;
        if (named->name == "Z") {
            basis = Matrix::Identity(local_dim, local_dim);
            labels = index_labels(local_dim);
        } else if (named->name == "X" && local_dim == 2) {
            const double h = std::numbers::sqrt2 / 2.0;
            basis.resize(2, 2);
            basis << h, h, h, -h;
            labels = {"+", "-"};
        } else if (named->name == "Y" && local_dim == 2) {
            const double h = std::numbers::sqrt2 / 2.0;
            basis.resize(2, 2);
            basis << h, h, Complex(0, h), Complex(0, -h);
            labels = {"+i", "-i"};
        } else {
            throw ValidationError("unknown basis '" + named->name + "' for local dimension " + std::to_string(local_dim));
        }
        return KrausInstrument::projective(party, basis, labels);
    }
    if (const auto *proj = std::get_if<ProjectiveBasis>(&spec)) {
        if (proj->vectors.rows() != local_dim) {
            throw ValidationError("dimension mismatch: projective basis size " + std::to_string(proj->vectors.rows()) +
                                  " for local dimension " + std::to_string(local_dim));
        }
        return KrausInstrument::projective(party, proj->vectors, proj->labels);
    }
    const auto &kraus = std::get<KrausList>(spec);
    KrausInstrument instr(party, kraus.outcomes);
    if (instr.dim() != local_dim) {
        throw ValidationError("dimension mismatch: Kraus operators of size " + std::to_string(instr.dim()) +
                              " for local dimension " + std::to_string(local_dim));
    }
    return instr;
}

BipartiteEnsemble build_ensemble(const Scenario &s) {
    if (s.kind == ScenarioKind::BellDiagonal) {
        return BipartiteEnsemble({{1.0, bell_diagonal(*s.bell)}});
    }
    std::vector<EnsembleMember> members;
    for (const auto &m : s.members) {
        if (const Vector *v = std::get_if<Vector>(&m.state)) {
            if (v->size() != s.dim_a * s.dim_b) {
                throw ValidationError("dimension mismatch: pure member of length " + std::to_string(v->size()) +
                                      " for dims (" + std::to_string(s.dim_a) + "," + std::to_string(s.dim_b) + ")");
            }
            members.push_back({m.probability, DensityOperator::pure(*v, s.dim_a, s.dim_b)});
        } else {
            members.push_back(
                {m.probability, validate_density(std::get<Matrix>(m.state), s.dim_a, s.dim_b, s.validation_tol)});
        }
    }
    return BipartiteEnsemble(std::move(members), s.validation_tol);
}

ScheduledChooser build_chooser(const Scenario &s) {
    auto local = [&](Party p) { return p == Party::A ? s.dim_a : s.dim_b; };
    ScheduledChooser chooser;
    for (size_t k = 0; k < s.steps.size(); ++k) {
        chooser.set_round(k, build_instrument(s.steps[k].instrument, s.steps[k].party, local(s.steps[k].party)));
    }
    for (const auto &ov : s.overrides) {
        chooser.set_override(ov.history, build_instrument(ov.instrument, ov.party, local(ov.party)));
    }
    return chooser;
}

Scenario generate_random_scenario(uint64_t seed, const RandomSpec &spec) {
    if (spec.n_members.min < 1) {
        throw ValidationError("invalid random spec: n_members must be at least 1");
    }
    if (spec.protocol_depth.min < 0) {
        throw ValidationError("invalid random spec: protocol depth must be nonnegative");
    }
    if (spec.dim_a != 2 || spec.dim_b != 2) {
        throw ValidationError("measure unavailable: random scenarios are limited to dims (2,2)");
    }
    if (spec.instrument_family != "projective-random-basis") {
        throw ValidationError("unknown instrument family '" + spec.instrument_family + "'");
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_members(spec.n_members.min, spec.n_members.max);
    std::uniform_int_distribution<int> pick_depth(spec.protocol_depth.min, spec.protocol_depth.max);
    const int n_members = pick_members(rng);
    const int depth = pick_depth(rng);

    Scenario s;
    s.name = "random-" + std::to_string(seed);
    s.kind = ScenarioKind::Protocol;
    s.dim_a = spec.dim_a;
    s.dim_b = spec.dim_b;

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> weights;
    double total = 0.0;
    for (int k = 0; k < n_members; ++k) {
        Vector psi(s.dim_a * s.dim_b);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            double re = gauss(rng);
            double im = gauss(rng);
            psi[i] = Complex(re, im);
        }
        psi.normalize();
        double w = -std::log(1.0 - unit(rng));
        weights.push_back(w);
        total += w;
        s.members.push_back({0.0, psi});
    }
    for (int k = 0; k < n_members; ++k) {
        s.members[k].probability = weights[k] / total;
    }

    Party party = unit(rng) < 0.5 ? Party::A : Party::B;
    auto local = [&](Party p) { return p == Party::A ? s.dim_a : s.dim_b; };
    std::vector<History> frontier{{}};
    for (int round = 0; round < depth; ++round) {
        const int d = local(party);
        s.steps.push_back({party, ProjectiveBasis{random_unitary(rng, d), index_labels(d)}});
        if (round > 0) {
            for (const auto &h : frontier) {
                s.overrides.push_back({h, party, ProjectiveBasis{random_unitary(rng, d), index_labels(d)}});
            }
        }
        std::vector<History> next;
        for (const auto &h : frontier) {
            for (const auto &label : index_labels(d)) {
                History child = h;
                child.push_back(label);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
        party = other(party);
    }
    return s;
}

}  // namespace loccbench
