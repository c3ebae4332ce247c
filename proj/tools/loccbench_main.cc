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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "loccbench/runner.h"

int main(int argc, char **argv) {
    CLI::App app{"loccbench: LOCC information/entanglement bound workbench"};
    app.usage("loccbench <command> <scenario-path> [--seed N] [--trials N] [--tol X] [--format json|table]\n"
              "commands: bounds-verify, protocol-run, distill-report, entropy, generate");

    std::string command;
    std::string path;
    loccbench::RunOptions opts;
    std::string format = "table";
    app.add_option("command", command, "bounds-verify | protocol-run | distill-report | entropy | generate")->required();
    app.add_option("scenario", path, "Scenario JSON file")->required();
    app.add_option("--seed", opts.seed, "Seed for random scenarios");
    app.add_option("--trials", opts.trials, "Trials for random scenarios")->check(CLI::PositiveNumber);
    app.add_option("--tol", opts.tol, "Slack tolerance for PASS/FAIL")->check(CLI::NonNegativeNumber);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return loccbench::kExitInputError;
    }
    opts.format = format == "json" ? loccbench::Format::Json : loccbench::Format::Table;

    auto result = loccbench::run_scenario_file(path, command, opts);
    if (result.exit_code == loccbench::kExitInputError) {
        std::cerr << result.output << app.get_usage() << "\n";
    } else {
        std::cout << result.output;
    }
    return result.exit_code;
}
