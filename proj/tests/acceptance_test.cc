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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "loccbench/runner.h"
#include "oracles/oracles.h"
#include "test_util.h"

using namespace loccbench;
using namespace loccbench::testing;

namespace {

int failures = 0;

void report(const char *id, bool pass, const std::string &detail) {
    std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++failures;
    }
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

std::string source_path(const std::string &rel) {
    return std::string(LOCCBENCH_SOURCE_DIR) + "/" + rel;
}

BellDiagonalSpec random_bell_spec(std::mt19937_64 &rng, int d) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BellDiagonalSpec spec{d, {}};
    double total = 0.0;
    for (int k = 0; k < d * d; ++k) {
        spec.probs.push_back(-std::log(1.0 - u(rng)));
        total += spec.probs.back();
    }
    for (double &p : spec.probs) {
        p /= total;
    }
    return spec;
}

oracle::StepChooser oracle_chooser(const ScheduledChooser &chooser) {
    return [chooser](const std::vector<std::string> &h) -> std::optional<oracle::KrausStep> {
        auto instr = chooser(h);
        if (!instr) {
            return std::nullopt;
        }
        oracle::KrausStep step{instr->party() == Party::A, {}};
        for (const auto &o : instr->outcomes()) {
            step.second.emplace_back(o.label, o.kraus);
        }
        return step;
    };
}

// Criteria 1 and 7 share the same 200 random protocols; returns the largest
// tree vs flat mutual information deviation.
double randomized_protocols() {
    const int trials = 200;
    const double tol = 1e-7;
    double worst_bound = INFINITY;
    double worst_audit = INFINITY;
    double worst_chain = 0.0;
    int bound_failures = 0;
    auto started = std::chrono::steady_clock::now();
    for (int t = 0; t < trials; ++t) {
        Scenario s = generate_random_scenario(static_cast<uint64_t>(t), RandomSpec{});
        BipartiteEnsemble ens = build_ensemble(s);
        ScheduledChooser chooser = build_chooser(s);
        auto transcript = run_protocol(ens, chooser, static_cast<int>(s.steps.size()));
        BoundReport r = bound_suite(transcript, s.measure_in, s.measure_out);
        double slack = std::min({r.slack_sei(), r.slack_asol1(), r.slack_ghyama()});
        if (auto a = r.slack_asol()) {
            slack = std::min(slack, *a);
        }
        if (auto a = r.slack_asol25()) {
            slack = std::min(slack, *a);
        }
        worst_bound = std::min(worst_bound, slack);
        bool ok = slack >= -tol;
        for (const auto &a : audit_rounds(transcript)) {
            double audit = std::min({a.lemma1_slack, a.lemma1_worst_node_slack, a.entropy_drop_slack});
            worst_audit = std::min(worst_audit, audit);
            ok = ok && audit >= -tol;
        }
        if (!ok) {
            ++bound_failures;
        }

        std::vector<double> probs;
        std::vector<Vector> members;
        for (const auto &m : s.members) {
            probs.push_back(m.probability);
            members.push_back(std::get<Vector>(m.state));
        }
        double flat = oracle::mutual_information(
            oracle::joint_distribution(probs, members, oracle_chooser(chooser), transcript.depth(), 2, 2));
        worst_chain = std::max(worst_chain, std::abs(flat - chain_mutual_information(transcript).total));
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report("AC1 randomized bound suite", bound_failures == 0 && worst_bound >= -tol && worst_audit >= -tol &&
                                             seconds < 60.0,
           fmt("(200 trials, min bound slack %.3e, min audit slack %.3e, %.2f s)", worst_bound, worst_audit, seconds));
    return worst_chain;
}

void saturation() {
    RunOptions opts;
    opts.format = Format::Json;
    auto r = run_scenario_file(source_path("scenarios/phi_pm_x_then_x.json"), "bounds-verify", opts);
    const auto &br = r.report["results"][0]["bound_report"];
    double info = br["I_locc"].get<double>();
    double ghyama = br["bound_ghyama"].get<double>();
    double n = br["N_qubits"].get<double>();
    double e_in = br["E_in_avg"].get<double>();
    double e_out = br["E_out_avg"].get<double>();
    bool pass = r.exit_code == kExitOk && std::abs(info - 1.0) <= 1e-9 && std::abs(ghyama - 1.0) <= 1e-9 &&
                std::abs((n - e_in - e_out) - 1.0) <= 1e-9 && std::abs(info - ghyama) <= 1e-9;
    report("AC2 saturation witness", pass, fmt("(I_locc = %.12f, ghyama = %.12f)", info, ghyama));
}

void hashing() {
    std::mt19937_64 rng(2002);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        auto spec = random_bell_spec(rng, 2);
        double expected = 1.0 - oracle::shannon(spec.probs);
        worst = std::max(worst, std::abs(dp_bound(bell_diagonal(spec)) - expected));
    }
    double fixed = dp_bound(bell_diagonal({2, {0.9, 0.1, 0.0, 0.0}}));
    double oracle_fixed = 1.0 - oracle::shannon({0.9, 0.1});
    bool pass = worst <= 1e-7 && std::abs(fixed - 0.5310) <= 1e-4 && std::abs(fixed - oracle_fixed) <= 1e-7;
    report("AC3 hashing saturation", pass,
           fmt("(50 specs, max deviation %.3e; (0.9, 0.1, 0, 0) gives %.6f, oracle %.6f)", worst, fixed, oracle_fixed));
}

void dpprime_nonvacuity() {
    auto mixed = bell_diagonal({2, {0.25, 0.25, 0.25, 0.25}});
    auto b = dpprime_bound(mixed);
    std::mt19937_64 rng(2004);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        auto spec = random_bell_spec(rng, t % 2 == 0 ? 2 : 3);
        worst = std::max(worst, std::abs(dpprime_bound(bell_diagonal(spec)).bound - dpprime_bound_bell(spec)));
    }
    bool pass = std::abs(b.bound - 0.3333) <= 1e-4 && b.bound > 0.0 && worst <= 1e-7;
    report("AC4 partial-distinguishing bound nonvacuity", pass,
           fmt("(I/4 gives %.6f; 100 specs, max closed-form deviation %.3e)", b.bound, worst));
}

void qubit_entropy() {
    std::mt19937_64 rng(2005);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        // Mix pure, mixed and near-pure states.
        auto rho = random_state(rng, 2, 1, 1 + t % 2);
        if (t % 5 == 0) {
            Matrix m = 0.999999 * rho.matrix() + 0.000001 * Matrix::Identity(2, 2) / 2.0;
            rho = validate_density(m, 2, 1);
        }
        worst = std::max(worst, std::abs(von_neumann_entropy(rho) - oracle::qubit_entropy(rho.matrix())));
    }
    report("AC5 entropy vs Bloch closed form", worst <= 1e-9, fmt("(1000 states, max deviation %.3e)", worst));
}

void measure_consistency() {
    std::mt19937_64 rng(2006);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        Vector psi = random_vector(rng, 4);
        psi.normalize();
        auto rho = DensityOperator::pure(psi, 2, 2);
        double eof = eof_from_concurrence(concurrence(rho));
        worst = std::max(worst, std::abs(eof - oracle::pure_pair_entanglement(psi)));
    }
    Matrix m = 0.5 * proj(psi_minus()) + 0.5 * Matrix::Identity(4, 4) / 4.0;
    auto werner = validate_density(m, 2, 2);
    double eof = entanglement(werner, Measure::EofTwoQubit);
    auto search = oracle::convex_roof_search(werner.matrix(), 7, 4, 3000);
    bool pass = worst <= 1e-7 && std::abs(eof - 0.1176) <= 1e-3 && search.lowest_sample >= eof - 1e-9 &&
                std::abs(search.best - eof) <= 1e-3;
    report("AC6 measure consistency", pass,
           fmt("(500 pure states, max |EoF - EoE| %.3e; Werner EoF %.6f, convex-roof search %.6f)", worst, eof,
               search.best));
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void determinism() {
    bool pass = true;
    int compared = 0;
    std::istringstream manifest(read_file(source_path("tests/golden/manifest.txt")));
    std::string line;
    while (std::getline(manifest, line)) {
        std::istringstream fields(line);
        std::string golden, command, scenario;
        RunOptions opts;
        opts.format = Format::Json;
        if (!(fields >> golden >> command >> scenario >> opts.seed >> opts.trials)) {
            continue;
        }
        auto path = source_path("scenarios/" + scenario);
        auto first = run_scenario_file(path, command, opts);
        auto second = run_scenario_file(path, command, opts);
        bool same = first.output == second.output && first.output == read_file(source_path("tests/golden/" + golden));
        if (!same) {
            std::printf("  mismatch: %s\n", golden.c_str());
        }
        pass = pass && same;
        ++compared;
    }
    report("AC8 CLI determinism", pass && compared > 0, "(" + std::to_string(compared) + " golden reports)");
}

}  // namespace

int main() {
    try {
        double worst_chain = randomized_protocols();
        saturation();
        hashing();
        dpprime_nonvacuity();
        qubit_entropy();
        measure_consistency();
        report("AC7 chain rule vs flat joint distribution", worst_chain <= 1e-9,
               fmt("(200 trials, max |I_tree - I_flat| = %.3e)", worst_chain));
        determinism();
    } catch (const std::exception &e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
