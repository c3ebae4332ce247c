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

#include "loccbench/runner.h"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace loccbench {

using nlohmann::json;

namespace {

json number_or_inf(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "+inf" : "-inf";
    }
    return v;
}

json optional_number(const std::optional<double> &v) {
    return v ? json(*v) : json(nullptr);
}

Check inequality(std::string name, double bound, double measured, double tol) {
    double slack = bound - measured;
    return {std::move(name), bound, measured, slack, slack >= -tol};
}

Check equality(std::string name, double value, double expected, double tol) {
    double dev = value - expected;
    return {std::move(name), value, expected, dev, std::abs(dev) <= tol};
}

json checks_json(const std::vector<Check> &checks) {
    json out = json::array();
    for (const auto &c : checks) {
        out.push_back({{"name", c.name},
                       {"value", number_or_inf(c.value)},
                       {"measured", number_or_inf(c.measured)},
                       {"slack", number_or_inf(c.slack)},
                       {"pass", c.pass}});
    }
    return out;
}

bool all_pass(const std::vector<Check> &checks) {
    for (const auto &c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

int protocol_depth(const Scenario &s) {
    return s.kind == ScenarioKind::Protocol ? static_cast<int>(s.steps.size()) : 0;
}

ProtocolTranscript transcript_for(const Scenario &s, const BipartiteEnsemble &ens) {
    ScheduledChooser chooser = build_chooser(s);
    return run_protocol(ens, chooser, protocol_depth(s));
}

struct TrialOutcome {
    json body;
    std::vector<Check> checks;
};

TrialOutcome bounds_verify(const Scenario &s, double tol) {
    BipartiteEnsemble ens = build_ensemble(s);
    ProtocolTranscript t = transcript_for(s, ens);
    BoundReport r = bound_suite(t, s.measure_in, s.measure_out);
    auto audits = audit_rounds(t);
    auto chain = chain_mutual_information(t);
    TrialOutcome out;
    out.checks = bound_checks(ens, r, audits, chain, tol);
    out.body = {{"depth", t.depth()}, {"bound_report", bound_report_json(r)}, {"audit", audit_json(audits)}};
    return out;
}

TrialOutcome protocol_run(const Scenario &s, double tol) {
    BipartiteEnsemble ens = build_ensemble(s);
    ProtocolTranscript t = transcript_for(s, ens);
    auto chain = chain_mutual_information(t);
    json nodes = json::array();
    double leaf_total = 0.0;
    for (const auto &n : t.nodes()) {
        nodes.push_back({{"path", n.path},
                         {"depth", n.depth},
                         {"probability", n.probability},
                         {"acting", n.acting ? json(party_name(*n.acting)) : json(nullptr)},
                         {"posterior", n.posterior.probabilities()}});
        if (n.depth == t.depth()) {
            leaf_total += n.probability;
        }
    }
    double round_sum = 0.0;
    for (double v : chain.per_round) {
        round_sum += v;
    }
    TrialOutcome out;
    out.checks.push_back(equality("chain_rule", round_sum, chain.total, tol));
    out.checks.push_back(equality("leaf_probability_sum", leaf_total, 1.0, tol));
    out.body = {{"depth", t.depth()},
                {"nodes", nodes},
                {"chain", {{"per_round", chain.per_round}, {"total", chain.total}}}};
    return out;
}

TrialOutcome distill_report(const Scenario &s, double tol) {
    DistillationReport r = s.kind == ScenarioKind::BellDiagonal ? distillation_report(*s.bell)
                                                                 : distillation_report(build_ensemble(s).average_state());
    TrialOutcome out;
    if (r.bell_diagonal_closed_forms) {
        out.checks.push_back(equality("dp_closed_form", r.D_P_bound, r.bell_diagonal_closed_forms->dp, tol));
        out.checks.push_back(equality("dpprime_closed_form", r.D_Pprime_bound, r.bell_diagonal_closed_forms->dpprime, tol));
    }
    out.body = {{"distillation_report", distillation_json(r)}};
    return out;
}

TrialOutcome entropy_report(const Scenario &s, double tol) {
    BipartiteEnsemble ens = build_ensemble(s);
    DensityOperator avg = ens.average_state();
    double chi = holevo_chi(ens);
    double chi_a = holevo_chi(ens, Party::A);
    double chi_b = holevo_chi(ens, Party::B);
    auto ppt = is_ppt(avg);
    TrialOutcome out;
    out.checks.push_back(inequality("holevo_nonnegative", chi, 0.0, tol));
    out.checks.push_back(inequality("holevo_A_nonnegative", chi_a, 0.0, tol));
    out.checks.push_back(inequality("holevo_B_nonnegative", chi_b, 0.0, tol));
    out.body = {{"S", von_neumann_entropy(avg)},
                {"S_A", von_neumann_entropy(partial_trace(avg, Party::A))},
                {"S_B", von_neumann_entropy(partial_trace(avg, Party::B))},
                {"chi", chi},
                {"chi_A", chi_a},
                {"chi_B", chi_b},
                {"ppt", ppt.ppt},
                {"min_pt_eigenvalue", ppt.min_eigenvalue}};
    return out;
}

std::string fmt_value(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "+inf" : "-inf";
    }
    std::ostringstream ss;
    ss << std::setprecision(10) << std::fixed << v;
    return ss.str();
}

void render_value_block(std::ostream &os, const json &j, const std::string &indent) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_number()) {
            os << indent << std::left << std::setw(22) << it.key() << fmt_value(it->get<double>()) << "\n";
        } else if (it->is_boolean() || it->is_string()) {
            os << indent << std::left << std::setw(22) << it.key() << (it->is_string() ? it->get<std::string>() : it->dump())
               << "\n";
        } else if (it->is_null()) {
            os << indent << std::left << std::setw(22) << it.key() << "n/a\n";
        }
    }
}

std::string render_table(const json &report, double seconds) {
    std::ostringstream os;
    os << "command: " << report["command"].get<std::string>() << "   scenario: " << report["scenario"].get<std::string>()
       << "   seed: " << report["seed"].get<uint64_t>() << "   tol: " << report["tol"].get<double>() << "\n";
    for (const auto &trial : report["results"]) {
        os << "\n== trial " << trial["trial"].get<int>() << " (" << trial["scenario"].get<std::string>() << ")\n";
        if (trial.contains("bound_report")) {
            render_value_block(os, trial["bound_report"], "  ");
        }
        if (trial.contains("distillation_report")) {
            render_value_block(os, trial["distillation_report"], "  ");
            const json &cf = trial["distillation_report"]["bell_diagonal_closed_forms"];
            if (cf.is_object()) {
                render_value_block(os, cf, "  closed form ");
            }
        }
        if (trial.contains("chain")) {
            os << "  " << std::left << std::setw(22) << "I_total" << fmt_value(trial["chain"]["total"].get<double>())
               << "\n";
            os << "  " << std::left << std::setw(22) << "transcript nodes" << trial["nodes"].size() << "\n";
        }
        if (trial.contains("S")) {
            render_value_block(os, trial, "  ");
        }
        os << "\n  " << std::left << std::setw(24) << "check" << std::right << std::setw(16) << "bound/value"
           << std::setw(16) << "measured" << std::setw(16) << "slack" << "  status\n";
        for (const auto &c : trial["checks"]) {
            auto cell = [](const json &v) { return v.is_string() ? v.get<std::string>() : fmt_value(v.get<double>()); };
            os << "  " << std::left << std::setw(24) << c["name"].get<std::string>() << std::right << std::setw(16)
               << cell(c["value"]) << std::setw(16) << cell(c["measured"]) << std::setw(16) << cell(c["slack"]) << "  "
               << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
        }
    }
    os << "\noverall: " << (report["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    os << "wall time: " << std::setprecision(3) << std::fixed << seconds << " s\n";
    return os.str();
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "bounds-verify") {
        return Command::BoundsVerify;
    }
    if (name == "protocol-run") {
        return Command::ProtocolRun;
    }
    if (name == "distill-report") {
        return Command::DistillReport;
    }
    if (name == "entropy") {
        return Command::Entropy;
    }
    if (name == "generate") {
        return Command::Generate;
    }
    return std::nullopt;
}

std::string_view command_name(Command c) {
    switch (c) {
        case Command::BoundsVerify:
            return "bounds-verify";
        case Command::ProtocolRun:
            return "protocol-run";
        case Command::DistillReport:
            return "distill-report";
        case Command::Entropy:
            return "entropy";
        case Command::Generate:
            return "generate";
    }
    return "";
}

json bound_report_json(const BoundReport &r) {
    return {{"I_locc", r.I_locc},
            {"per_round_I", r.per_round_I},
            {"E_out_avg", r.E_out_avg},
            {"E_in_avg", r.E_in_avg},
            {"N_qubits", r.N_qubits},
            {"bound_sei", r.bound_sei},
            {"bound_asol", optional_number(r.bound_asol)},
            {"bound_asol25", optional_number(r.bound_asol25)},
            {"bound_asol1", r.bound_asol1},
            {"bound_ghyama", r.bound_ghyama},
            {"slack_sei", r.slack_sei()},
            {"slack_asol", optional_number(r.slack_asol())},
            {"slack_asol25", optional_number(r.slack_asol25())},
            {"slack_asol1", r.slack_asol1()},
            {"slack_ghyama", r.slack_ghyama()}};
}

json audit_json(const std::vector<RoundAudit> &audits) {
    json out = json::array();
    for (const auto &a : audits) {
        out.push_back({{"round", a.round},
                       {"information", a.information},
                       {"lemma1_slack", a.lemma1_slack},
                       {"lemma1_worst_node_slack", a.lemma1_worst_node_slack},
                       {"distant_marginal_deviation", a.distant_marginal_deviation},
                       {"entropy_drop_slack", a.entropy_drop_slack}});
    }
    return out;
}

json distillation_json(const DistillationReport &r) {
    json closed = nullptr;
    if (r.bell_diagonal_closed_forms) {
        closed = {{"dp", r.bell_diagonal_closed_forms->dp}, {"dpprime", r.bell_diagonal_closed_forms->dpprime}};
    }
    return {{"S", r.S},
            {"S_A", r.S_A},
            {"S_B", r.S_B},
            {"S_bar_A", r.S_bar_A},
            {"D_P_bound", r.D_P_bound},
            {"D_Pprime_bound", number_or_inf(r.D_Pprime_bound)},
            {"r_max", number_or_inf(r.r_max)},
            {"bell_diagonal_closed_forms", closed},
            {"hashing_yield", r.hashing_yield},
            {"hashing_yield_raw", r.hashing_yield_raw},
            {"ppt", r.ppt},
            {"min_pt_eigenvalue", r.min_pt_eigenvalue},
            {"degenerate_spectrum", r.degenerate_spectrum}};
}

std::vector<Check> bound_checks(const BipartiteEnsemble &ens, const BoundReport &r,
                                const std::vector<RoundAudit> &audits, const ChainInformation &chain, double tol) {
    std::vector<Check> checks;
    checks.push_back(inequality("sei", r.bound_sei, r.I_locc, tol));
    if (r.bound_asol) {
        checks.push_back(inequality("asol", *r.bound_asol, r.I_locc, tol));
    }
    if (r.bound_asol25) {
        checks.push_back(inequality("asol25", *r.bound_asol25, r.I_locc, tol));
    }
    checks.push_back(inequality("asol1", r.bound_asol1, r.I_locc, tol));
    checks.push_back(inequality("ghyama", r.bound_ghyama, r.I_locc, tol));
    checks.push_back(inequality("global_holevo", holevo_chi(ens), r.I_locc, tol));
    double round_sum = 0.0;
    for (double v : chain.per_round) {
        round_sum += v;
    }
    checks.push_back(equality("chain_rule", round_sum, chain.total, tol));
    for (const auto &a : audits) {
        const std::string k = std::to_string(a.round);
        checks.push_back(
            {"lemma1_round" + k, a.information + a.lemma1_slack, a.information, a.lemma1_slack, a.lemma1_slack >= -tol});
        checks.push_back({"lemma1_nodes_round" + k, a.lemma1_worst_node_slack, 0.0, a.lemma1_worst_node_slack,
                          a.lemma1_worst_node_slack >= -tol});
        checks.push_back({"distant_marginal_round" + k, a.distant_marginal_deviation, 0.0, a.distant_marginal_deviation,
                          a.distant_marginal_deviation <= kDefaultTol});
        checks.push_back({"entropy_drop_round" + k, a.entropy_drop_slack, 0.0, a.entropy_drop_slack,
                          a.entropy_drop_slack >= -tol});
    }
    return checks;
}

RunResult run_scenario(const Scenario &s, Command command, const RunOptions &opts) {
    auto started = std::chrono::steady_clock::now();
    RunResult result;

    if (command == Command::Generate) {
        if (s.kind != ScenarioKind::Random) {
            throw ScenarioError("kind: 'generate' needs a scenario of kind 'random'");
        }
        result.report = to_json(generate_random_scenario(opts.seed, *s.random));
        result.output = result.report.dump(2) + "\n";
        return result;
    }

    std::vector<std::pair<uint64_t, Scenario>> concrete;
    if (s.kind == ScenarioKind::Random) {
        if (opts.trials < 1) {
            throw ValidationError("trials must be at least 1");
        }
        for (int t = 0; t < opts.trials; ++t) {
            concrete.emplace_back(opts.seed + t, generate_random_scenario(opts.seed + t, *s.random));
        }
    } else {
        concrete.emplace_back(opts.seed, s);
    }

    json results = json::array();
    bool pass = true;
    for (size_t t = 0; t < concrete.size(); ++t) {
        const auto &[trial_seed, scenario] = concrete[t];
        TrialOutcome outcome;
        switch (command) {
            case Command::BoundsVerify:
                outcome = bounds_verify(scenario, opts.tol);
                break;
            case Command::ProtocolRun:
                outcome = protocol_run(scenario, opts.tol);
                break;
            case Command::DistillReport:
                outcome = distill_report(scenario, opts.tol);
                break;
            case Command::Entropy:
                outcome = entropy_report(scenario, opts.tol);
                break;
            case Command::Generate:
                break;
        }
        bool trial_pass = all_pass(outcome.checks);
        pass = pass && trial_pass;
        json trial{{"trial", t}, {"seed", trial_seed}, {"scenario", scenario.name}};
        trial.update(outcome.body);
        trial["checks"] = checks_json(outcome.checks);
        trial["pass"] = trial_pass;
        results.push_back(std::move(trial));
    }

    result.report = {{"command", command_name(command)},
                     {"scenario", s.name},
                     {"kind", scenario_kind_name(s.kind)},
                     {"seed", opts.seed},
                     {"trials", concrete.size()},
                     {"tol", opts.tol},
                     {"results", std::move(results)},
                     {"pass", pass}};
    result.exit_code = pass ? kExitOk : kExitBoundFailure;
    if (opts.format == Format::Json) {
        result.output = result.report.dump(2) + "\n";
    } else {
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        result.output = render_table(result.report, seconds);
    }
    return result;
}

RunResult run_scenario_file(const std::string &path, std::string_view command, const RunOptions &opts) {
    RunResult result;
    auto cmd = parse_command(command);
    if (!cmd) {
        result.exit_code = kExitInputError;
        result.output = "error: unknown command '" + std::string(command) +
                        "' (expected bounds-verify, protocol-run, distill-report, entropy, generate)\n";
        return result;
    }
    try {
        return run_scenario(load_scenario(path), *cmd, opts);
    } catch (const std::exception &e) {
        result.exit_code = kExitInputError;
        result.output = std::string("error: ") + e.what() + "\n";
    }
    return result;
}

}  // namespace loccbench
