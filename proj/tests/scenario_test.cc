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

#include <doctest.h>

#include "loccbench/runner.h"
#include "test_util.h"

using namespace loccbench;
using namespace loccbench::testing;

namespace {

std::string scenario_path(const std::string &name) {
    return std::string(LOCCBENCH_SOURCE_DIR) + "/scenarios/" + name;
}

bool same_members(const Scenario &a, const Scenario &b) {
    if (a.members.size() != b.members.size()) {
        return false;
    }
    for (size_t k = 0; k < a.members.size(); ++k) {
        if (a.members[k].probability != b.members[k].probability) {
            return false;
        }
        if (a.members[k].state.index() != b.members[k].state.index()) {
            return false;
        }
        if (const Vector *v = std::get_if<Vector>(&a.members[k].state)) {
            if (*v != std::get<Vector>(b.members[k].state)) {
                return false;
            }
        } else if (std::get<Matrix>(a.members[k].state) != std::get<Matrix>(b.members[k].state)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("parse errors name the offending field") {
    CHECK_THROWS_WITH_AS(parse_scenario_text("{\"kind\": \"ensemble\", \"dims\": [2, 2], \"members\": [ {\"probability\": "
                                             "1.0, \"pure\": [[1, 0], [0], [0, 0], [0, 0]]} ]}"),
                         doctest::Contains("members[0].pure[1]"), ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario_text("{\"kind\": \"teleport\"}"), doctest::Contains("kind"), ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario_text("{\"kind\": \"ensemble\",\n \"dims\": [2, 2],\n \"members\": [}"),
                         doctest::Contains("line 3"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        parse_scenario_text("{\"kind\": \"protocol\", \"dims\": [2, 2], \"members\": [{\"probability\": 1, \"pure\": [1, "
                            "0, 0, 0]}], \"protocol\": {\"steps\": [{\"party\": \"C\", \"instrument\": {\"basis\": "
                            "\"Z\"}}]}}"),
        doctest::Contains("protocol.steps[0].party"), ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario_text("{\"kind\": \"bell_diagonal\"}"), doctest::Contains("bell_diagonal"),
                         ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario_text("{\"kind\": \"ensemble\", \"dims\": [2, 2]}"),
                         doctest::Contains("members"), ScenarioError);
}

TEST_CASE("bundled scenarios parse into valid module types") {
    for (const char *name : {"phi_pm_x_then_x.json", "four_bell_ensemble.json", "bell_diagonal_09_01.json",
                             "maximally_mixed_2x2.json", "random_sweep.json"}) {
        CAPTURE(name);
        Scenario s = load_scenario(scenario_path(name));
        if (s.kind != ScenarioKind::Random) {
            CHECK_NOTHROW(build_ensemble(s));
            CHECK_NOTHROW(build_chooser(s));
        }
    }
}

TEST_CASE("scenario JSON round trip") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Scenario s = generate_random_scenario(seed, RandomSpec{});
        Scenario back = parse_scenario(to_json(s));
        CHECK(same_members(s, back));
        CHECK(to_json(back) == to_json(s));
        Scenario again = parse_scenario_text(to_json(back).dump());
        CHECK(to_json(again).dump() == to_json(s).dump());
    }
    Scenario phi = load_scenario(scenario_path("phi_pm_x_then_x.json"));
    CHECK(to_json(parse_scenario(to_json(phi))) == to_json(phi));
}

TEST_CASE("generate_random_scenario") {
    RandomSpec spec;
    Scenario a = generate_random_scenario(42, spec);
    Scenario b = generate_random_scenario(42, spec);
    CHECK(to_json(a).dump() == to_json(b).dump());
    Scenario c = generate_random_scenario(43, spec);
    CHECK_FALSE(same_members(a, c));
    CHECK(a.members.size() >= 2);
    CHECK(a.members.size() <= 4);
    CHECK(a.steps.size() >= 1);
    CHECK(a.steps.size() <= 3);
    for (size_t k = 1; k < a.steps.size(); ++k) {
        CHECK(a.steps[k].party != a.steps[k - 1].party);
    }

    RandomSpec empty = spec;
    empty.n_members = {0, 0};
    CHECK_THROWS_AS(generate_random_scenario(1, empty), ValidationError);
    RandomSpec big = spec;
    big.dim_a = 3;
    CHECK_THROWS_WITH_AS(generate_random_scenario(1, big), doctest::Contains("measure unavailable"), ValidationError);
}

TEST_CASE("kraus instruments in scenario files") {
    const char *text = R"({
      "kind": "protocol", "dims": [2, 2],
      "members": [{"probability": 1.0, "pure": [[0.6, 0], [0, 0], [0, 0], [0.8, 0]]}],
      "protocol": {"steps": [{"party": "B", "instrument": {"kraus": [
          {"label": "a", "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
          {"label": "b", "matrix": [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]}]}}]}
    })";
    Scenario s = parse_scenario_text(text);
    auto t = run_protocol(build_ensemble(s), build_chooser(s), 1);
    REQUIRE(t.leaves().size() == 2);
    CHECK(t.nodes()[t.leaves()[0]].probability == doctest::Approx(0.36));
}

TEST_CASE("run_scenario: bounds-verify saturation scenario") {
    RunOptions opts;
    opts.format = Format::Json;
    auto r = run_scenario_file(scenario_path("phi_pm_x_then_x.json"), "bounds-verify", opts);
    CHECK(r.exit_code == kExitOk);
    const auto &br = r.report["results"][0]["bound_report"];
    CHECK(br["I_locc"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(br["bound_ghyama"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto &c : r.report["results"][0]["checks"]) {
        CHECK(c["pass"].get<bool>());
    }
}

TEST_CASE("run_scenario: distill-report on Bell-diagonal (0.9, 0.1, 0, 0)") {
    RunOptions opts;
    opts.format = Format::Json;
    auto r = run_scenario_file(scenario_path("bell_diagonal_09_01.json"), "distill-report", opts);
    CHECK(r.exit_code == kExitOk);
    const auto &dr = r.report["results"][0]["distillation_report"];
    CHECK(dr["D_P_bound"].get<double>() == doctest::Approx(0.5310).epsilon(1e-4));
    CHECK(dr["D_Pprime_bound"].get<double>() == doctest::Approx(0.6807).epsilon(1e-4));
}

TEST_CASE("run_scenario: entropy and protocol-run") {
    RunOptions opts;
    opts.format = Format::Json;
    auto r = run_scenario_file(scenario_path("four_bell_ensemble.json"), "entropy", opts);
    CHECK(r.exit_code == kExitOk);
    const auto &e = r.report["results"][0];
    CHECK(e["S"].get<double>() == doctest::Approx(2.0));
    CHECK(e["chi"].get<double>() == doctest::Approx(2.0));
    CHECK(std::abs(e["chi_A"].get<double>()) < 1e-12);

    r = run_scenario_file(scenario_path("phi_pm_x_then_x.json"), "protocol-run", opts);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.report["results"][0]["nodes"].size() == 7);
    CHECK(r.report["results"][0]["chain"]["total"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("run_scenario exit codes") {
    RunOptions opts;
    auto r = run_scenario_file(scenario_path("phi_pm_x_then_x.json"), "foo", opts);
    CHECK(r.exit_code == kExitInputError);
    CHECK(r.output.find("unknown command") != std::string::npos);

    r = run_scenario_file(scenario_path("does_not_exist.json"), "entropy", opts);
    CHECK(r.exit_code == kExitInputError);

    // A negative tolerance demands strictly positive slack, which the
    // saturating scenario cannot provide.
    RunOptions strict;
    strict.tol = -1e-3;
    r = run_scenario_file(scenario_path("phi_pm_x_then_x.json"), "bounds-verify", strict);
    CHECK(r.exit_code == kExitBoundFailure);
    CHECK(r.output.find("FAIL") != std::string::npos);

    Scenario mixed33 = parse_scenario_text(R"({"kind": "bell_diagonal", "bell_diagonal": {"d": 3,
        "probs": [0.2, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1]}})");
    CHECK_THROWS_WITH(run_scenario(mixed33, Command::BoundsVerify, opts), doctest::Contains("measure unavailable"));
    CHECK(run_scenario(mixed33, Command::DistillReport, opts).exit_code == kExitOk);
}

TEST_CASE("reports are deterministic") {
    RunOptions opts;
    opts.format = Format::Json;
    opts.seed = 5;
    opts.trials = 4;
    auto a = run_scenario_file(scenario_path("random_sweep.json"), "bounds-verify", opts);
    auto b = run_scenario_file(scenario_path("random_sweep.json"), "bounds-verify", opts);
    CHECK(a.exit_code == kExitOk);
    CHECK(a.output == b.output);
    CHECK(a.report["results"].size() == 4);
    opts.seed = 6;
    auto c = run_scenario_file(scenario_path("random_sweep.json"), "bounds-verify", opts);
    CHECK(c.output != a.output);

    auto g1 = run_scenario_file(scenario_path("random_sweep.json"), "generate", opts);
    auto g2 = run_scenario_file(scenario_path("random_sweep.json"), "generate", opts);
    CHECK(g1.output == g2.output);
    CHECK_NOTHROW(parse_scenario_text(g1.output));
}
