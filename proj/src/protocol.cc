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

#include "loccbench/protocol.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace loccbench {

namespace {

// Member weights below this (tr of the unnormalized update) are treated as
// ruled out by the outcome.
constexpr double kMemberDropThreshold = 1e-14;

DensityOperator normalized_state(const Matrix &unnormalized, int dim_a, int dim_b) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(unnormalized));
    RealVector evals = solver.eigenvalues().cwiseMax(0.0);
    double total = evals.sum();
    Matrix m = solver.eigenvectors() * (evals / total).cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
    return validate_density(hermitian_part(m), dim_a, dim_b);
}

double label_entropy(const BipartiteEnsemble &ens) {
    double h = 0.0;
    for (const auto &m : ens.members()) {
        if (m.probability > 0.0) {
            h -= m.probability * std::log2(m.probability);
        }
    }
    return h;
}

double mean_member_entropy(const BipartiteEnsemble &ens, Party side) {
    double s = 0.0;
    for (const auto &m : ens.members()) {
        if (m.probability > 0.0) {
            s += m.probability * von_neumann_entropy(partial_trace(m.state, side));
        }
    }
    return s;
}

Matrix average_marginal(const BipartiteEnsemble &ens, Party side) {
    return partial_trace(ens.average_state(), side);
}

std::string format_history(const History &h) {
    std::string out = "[";
    for (size_t k = 0; k < h.size(); ++k) {
        out += (k ? "," : "") + h[k];
    }
    return out + "]";
}

}  // namespace

KrausInstrument::KrausInstrument(Party party, std::vector<KrausOutcome> outcomes, double tol)
    : party_(party), outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        throw ValidationError("incomplete instrument: no outcomes");
    }
    const Eigen::Index d = outcomes_.front().kraus.rows();
    Matrix completeness = Matrix::Zero(d, d);
    for (const auto &o : outcomes_) {
        if (o.kraus.rows() != d || o.kraus.cols() != d) {
            throw ValidationError("dimension mismatch: Kraus operators must share one square size");
        }
        completeness += o.kraus.adjoint() * o.kraus;
    }
    double err = (completeness - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (!(err <= tol)) {
        std::stringstream ss;
        ss << "incomplete instrument: max |sum K^dagger K - I| = " << err;
        throw ValidationError(ss.str());
    }
}

KrausInstrument KrausInstrument::projective(Party party, const Matrix &basis, std::vector<std::string> labels) {
    if (basis.rows() != basis.cols() || static_cast<size_t>(basis.cols()) != labels.size()) {
        throw ValidationError("dimension mismatch: projective basis needs one label per column of a square matrix");
    }
    std::vector<KrausOutcome> outcomes;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        outcomes.push_back({std::move(labels[k]), basis.col(k) * basis.col(k).adjoint()});
    }
    return KrausInstrument(party, std::move(outcomes));
}

std::vector<Branch> measure_branch(const BipartiteEnsemble &ens, const KrausInstrument &instr) {
    const int da = ens.dim_a();
    const int db = ens.dim_b();
    const int local = instr.party() == Party::A ? da : db;
    if (instr.dim() != local) {
        std::stringstream ss;
        ss << "dimension mismatch: instrument of size " << instr.dim() << " acting on party "
           << party_name(instr.party()) << " of dimension " << local;
        throw ValidationError(ss.str());
    }

    struct Pending {
        std::string label;
        double probability;
        std::vector<double> weights;
        std::vector<Matrix> updated;
    };
    std::vector<Pending> pending;
    double surviving = 0.0;
    for (const auto &outcome : instr.outcomes()) {
        Matrix k = detail::embed_local(outcome.kraus, instr.party(), da, db);
        Pending p{outcome.label, 0.0, {}, {}};
        for (const auto &m : ens.members()) {
            Matrix sigma = k * m.state.matrix() * k.adjoint();
            double t = sigma.trace().real();
            p.weights.push_back(m.probability * t);
            p.updated.push_back(std::move(sigma));
            p.probability += m.probability * t;
        }
        if (p.probability < kPruneThreshold) {
            continue;
        }
        surviving += p.probability;
        pending.push_back(std::move(p));
    }

    std::vector<Branch> out;
    out.reserve(pending.size());
    for (auto &p : pending) {
        std::vector<EnsembleMember> members;
        double total = 0.0;
        for (size_t x = 0; x < p.weights.size(); ++x) {
            double t = p.updated[x].trace().real();
            if (t <= kMemberDropThreshold || p.weights[x] <= 0.0) {
                members.push_back({0.0, ens.members()[x].state});
            } else {
                members.push_back({p.weights[x], normalized_state(p.updated[x], da, db)});
                total += p.weights[x];
            }
        }
        for (auto &m : members) {
            m.probability /= total;
        }
        out.push_back({std::move(p.label), p.probability / surviving, BipartiteEnsemble(std::move(members))});
    }
    return out;
}

ProtocolTranscript::ProtocolTranscript(std::vector<TranscriptNode> nodes, int depth)
    : nodes_(std::move(nodes)), depth_(depth) {
    if (nodes_.empty()) {
        throw ValidationError("invalid transcript: no root");
    }
    double leaf_total = 0.0;
    for (int i : nodes_at_depth(depth_)) {
        leaf_total += nodes_[i].probability;
    }
    if (!(std::abs(leaf_total - 1.0) <= kDefaultTol)) {
        throw ValidationError("invalid transcript: leaf probabilities sum to " + std::to_string(leaf_total));
    }
}

std::vector<int> ProtocolTranscript::nodes_at_depth(int k) const {
    std::vector<int> out;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].depth == k) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

ProtocolTranscript run_protocol(const BipartiteEnsemble &ens, const InstrumentChooser &chooser, int depth) {
    if (depth < 0) {
        throw ValidationError("invalid protocol: negative depth");
    }
    std::vector<TranscriptNode> nodes;
    nodes.push_back({{}, 1.0, ens, std::nullopt, -1, {}, 0});
    std::vector<int> frontier{0};
    for (int round = 0; round < depth; ++round) {
        std::vector<int> next;
        for (int idx : frontier) {
            History path = nodes[idx].path;
            auto instr = chooser(path);
            if (!instr) {
                throw ValidationError("protocol undefined at history " + format_history(path));
            }
            auto branches = measure_branch(nodes[idx].posterior, *instr);
            double parent_p = nodes[idx].probability;
            for (auto &b : branches) {
                History child_path = path;
                child_path.push_back(b.label);
                int child = static_cast<int>(nodes.size());
                nodes.push_back({std::move(child_path), parent_p * b.probability, std::move(b.posterior), instr->party(),
                                 idx, {}, round + 1});
                nodes[idx].children.push_back(child);
                next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return ProtocolTranscript(std::move(nodes), depth);
}

void ScheduledChooser::set_round(size_t round, KrausInstrument instr) {
    if (rounds_.size() <= round) {
        rounds_.resize(round + 1);
    }
    rounds_[round] = std::move(instr);
}

void ScheduledChooser::set_override(History history, KrausInstrument instr) {
    overrides_.insert_or_assign(std::move(history), std::move(instr));
}

std::optional<KrausInstrument> ScheduledChooser::operator()(const History &history) const {
    auto it = overrides_.find(history);
    if (it != overrides_.end()) {
        return it->second;
    }
    if (history.size() < rounds_.size()) {
        return rounds_[history.size()];
    }
    return std::nullopt;
}

ChainInformation chain_mutual_information(const ProtocolTranscript &t) {
    const auto &nodes = t.nodes();
    std::vector<double> conditional(t.depth() + 1, 0.0);
    for (const auto &n : nodes) {
        conditional[n.depth] += n.probability * label_entropy(n.posterior);
    }
    ChainInformation out;
    for (int k = 1; k <= t.depth(); ++k) {
        out.per_round.push_back(conditional[k - 1] - conditional[k]);
    }
    out.total = conditional[0] - conditional[t.depth()];
    return out;
}

double average_output_entanglement(const ProtocolTranscript &t, Measure sel) {
    double e = 0.0;
    for (int i : t.leaves()) {
        const auto &n = t.nodes()[i];
        e += n.probability * entanglement(n.posterior.average_state(), sel);
    }
    return e;
}

double average_input_entanglement(const BipartiteEnsemble &ens, Measure sel) {
    double e = 0.0;
    for (const auto &m : ens.members()) {
        double v = entanglement(m.state, sel);
        e += m.probability * v;
    }
    return e;
}

std::optional<double> BoundReport::slack_asol() const {
    if (!bound_asol) {
        return std::nullopt;
    }
    return *bound_asol - I_locc;
}

std::optional<double> BoundReport::slack_asol25() const {
    if (!bound_asol25) {
        return std::nullopt;
    }
    return *bound_asol25 - I_locc;
}

bool BoundReport::all_slacks_at_least(double threshold) const {
    bool ok = slack_sei() >= threshold && slack_asol1() >= threshold && slack_ghyama() >= threshold;
    if (auto s = slack_asol()) {
        ok = ok && *s >= threshold;
    }
    if (auto s = slack_asol25()) {
        ok = ok && *s >= threshold;
    }
    return ok;
}

BoundReport bound_suite(const ProtocolTranscript &t, Measure sel_in, Measure sel_out) {
    const BipartiteEnsemble &root = t.root();
    DensityOperator avg = root.average_state();
    const double s_a = von_neumann_entropy(partial_trace(avg, Party::A));
    const double s_b = von_neumann_entropy(partial_trace(avg, Party::B));
    const double member_a = mean_member_entropy(root, Party::A);
    const double member_b = mean_member_entropy(root, Party::B);

    BoundReport r;
    auto info = chain_mutual_information(t);
    r.I_locc = info.total;
    r.per_round_I = std::move(info.per_round);
    r.E_out_avg = average_output_entanglement(t, sel_out);
    r.E_in_avg = average_input_entanglement(root, sel_in);
    r.N_qubits = std::log2(static_cast<double>(root.dim_a() * root.dim_b()));
    r.bound_sei = s_a + s_b - std::max(member_a, member_b);
    r.bound_asol1 = r.bound_sei - r.E_out_avg;
    r.bound_ghyama = r.N_qubits - r.E_in_avg - r.E_out_avg;

    if (t.depth() >= 1) {
        auto leaves = t.leaves();
        const Party last = *t.nodes()[leaves.front()].acting;
        bool uniform = std::all_of(leaves.begin(), leaves.end(), [&](int i) { return t.nodes()[i].acting == last; });
        if (uniform) {
            double leaf_term = 0.0;
            for (int i : leaves) {
                const auto &n = t.nodes()[i];
                leaf_term += n.probability * von_neumann_entropy(average_marginal(n.posterior, last));
            }
            double prev_term = 0.0;
            for (int i : t.nodes_at_depth(t.depth() - 1)) {
                const auto &n = t.nodes()[i];
                prev_term += n.probability * von_neumann_entropy(average_marginal(n.posterior, other(last)));
            }
            const double member_last = last == Party::A ? member_a : member_b;
            const double member_distant = last == Party::A ? member_b : member_a;
            r.bound_asol = s_a + s_b - member_distant - leaf_term;
            r.bound_asol25 = s_a + s_b - member_last - prev_term;
        }
    }
    return r;
}

bool RoundAudit::passes(double slack_tol, double marginal_tol) const {
    return lemma1_slack >= -slack_tol && lemma1_worst_node_slack >= -slack_tol &&
           distant_marginal_deviation <= marginal_tol && entropy_drop_slack >= -slack_tol;
}

std::vector<RoundAudit> audit_rounds(const ProtocolTranscript &t) {
    const auto &nodes = t.nodes();
    std::vector<RoundAudit> out;
    for (int round = 1; round <= t.depth(); ++round) {
        RoundAudit a{round, 0.0, 0.0, INFINITY, 0.0, 0.0};
        for (int idx : t.nodes_at_depth(round - 1)) {
            const auto &parent = nodes[idx];
            if (parent.children.empty()) {
                continue;
            }
            const Party acting = *nodes[parent.children.front()].acting;
            const Party distant = other(acting);
            const double p = parent.probability;

            double chi_after = 0.0;
            double h_after = 0.0;
            double acting_after = 0.0;
            double distant_after = 0.0;
            Matrix distant_avg_after = Matrix::Zero(distant == Party::A ? t.root().dim_a() : t.root().dim_b(),
                                                    distant == Party::A ? t.root().dim_a() : t.root().dim_b());
            for (int c : parent.children) {
                const auto &child = nodes[c];
                const double w = child.probability / p;
                chi_after += w * holevo_chi(child.posterior, acting);
                h_after += w * label_entropy(child.posterior);
                acting_after += w * mean_member_entropy(child.posterior, acting);
                distant_after += w * mean_member_entropy(child.posterior, distant);
                distant_avg_after += w * average_marginal(child.posterior, distant);
            }
            const double info = label_entropy(parent.posterior) - h_after;
            const double node_slack = holevo_chi(parent.posterior, acting) - chi_after - info;
            const double acting_drop = mean_member_entropy(parent.posterior, acting) - acting_after;
            const double distant_drop = mean_member_entropy(parent.posterior, distant) - distant_after;
            const double deviation = (average_marginal(parent.posterior, distant) - distant_avg_after).cwiseAbs().maxCoeff();

            a.information += p * info;
            a.lemma1_slack += p * node_slack;
            a.lemma1_worst_node_slack = std::min(a.lemma1_worst_node_slack, node_slack);
            a.distant_marginal_deviation = std::max(a.distant_marginal_deviation, deviation);
            a.entropy_drop_slack += p * (acting_drop - distant_drop);
        }
        if (std::isinf(a.lemma1_worst_node_slack)) {
            a.lemma1_worst_node_slack = 0.0;
        }
        out.push_back(a);
    }
    return out;
}

}  // namespace loccbench
