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

#ifndef _LOCCBENCH_RUNNER_H
#define _LOCCBENCH_RUNNER_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loccbench/scenario.h"

namespace loccbench {

enum class Command { BoundsVerify, ProtocolRun, DistillReport, Entropy, Generate };
enum class Format { Json, Table };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitBoundFailure = 1;
inline constexpr int kExitInputError = 2;

struct RunOptions {
    uint64_t seed = 0;
    int trials = 1;
    double tol = kSlackTol;
    Format format = Format::Table;
};

/// One inequality or consistency check: `value` is the bound side,
/// `measured` the quantity it constrains, `slack` = value - measured (or a
/// deviation for equality checks, where `pass` means |slack| <= tol).
struct Check {
    std::string name;
    double value;
    double measured;
    double slack;
    bool pass;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string output;
    nlohmann::json report;  // machine-readable report (also for table output)
};

/// Runs `command` on a parsed scenario. Random scenarios are expanded into
/// `trials` concrete scenarios seeded with seed, seed + 1, ...
RunResult run_scenario(const Scenario &s, Command command, const RunOptions &opts);

/// File-level entry point used by the CLI; never throws. Input problems map
/// to kExitInputError with the message in `output`.
RunResult run_scenario_file(const std::string &path, std::string_view command, const RunOptions &opts);

/// JSON fragments shared with the Python bindings.
nlohmann::json bound_report_json(const BoundReport &r);
nlohmann::json audit_json(const std::vector<RoundAudit> &audits);
nlohmann::json distillation_json(const DistillationReport &r);
std::vector<Check> bound_checks(const BipartiteEnsemble &ens, const BoundReport &r,
                                const std::vector<RoundAudit> &audits, const ChainInformation &chain, double tol);

}  // namespace loccbench

#endif
