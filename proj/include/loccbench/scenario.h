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

#ifndef _LOCCBENCH_SCENARIO_H
#define _LOCCBENCH_SCENARIO_H

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "loccbench/distillation.h"
#include "loccbench/protocol.h"

namespace loccbench {

/// Malformed scenario. The message starts with the offending field path,
/// e.g. "members[1].pure[0]: expected [re, im] pair".
class ScenarioError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

enum class ScenarioKind { Ensemble, Protocol, BellDiagonal, Random };

std::string_view scenario_kind_name(ScenarioKind k);

/// Named qubit-or-qudit basis: "Z" (computational, any d), "X" and "Y" (d = 2).
struct NamedBasis {
    std::string name;
};
/// Columns of `vectors` form the measurement basis.
struct ProjectiveBasis {
    Matrix vectors;
    std::vector<std::string> labels;
};
struct KrausList {
    std::vector<KrausOutcome> outcomes;
};
using InstrumentSpec = std::variant<NamedBasis, ProjectiveBasis, KrausList>;

struct StepSpec {
    Party party;
    InstrumentSpec instrument;
};

struct OverrideSpec {
    History history;
    Party party;
    InstrumentSpec instrument;
};

struct MemberSpec {
    double probability;
    std::variant<Vector, Matrix> state;  // pure vector or density matrix
};

/// Inclusive integer range; a fixed value has min == max.
struct IntRange {
    int min;
    int max;
};

struct RandomSpec {
    IntRange n_members{2, 4};
    int dim_a = 2;
    int dim_b = 2;
    IntRange protocol_depth{1, 3};
    std::string instrument_family = "projective-random-basis";
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::Ensemble;
    int dim_a = 2;
    int dim_b = 2;
    std::vector<MemberSpec> members;
    std::vector<StepSpec> steps;
    std::vector<OverrideSpec> overrides;
    Measure measure_in = Measure::Auto;
    Measure measure_out = Measure::Auto;
    double validation_tol = kDefaultTol;
    std::optional<BellDiagonalSpec> bell;
    std::optional<RandomSpec> random;
};

Scenario parse_scenario(const nlohmann::json &j);
Scenario parse_scenario_text(const std::string &text);
Scenario load_scenario(const std::string &path);
nlohmann::json to_json(const Scenario &s);

KrausInstrument build_instrument(const InstrumentSpec &spec, Party party, int local_dim);
BipartiteEnsemble build_ensemble(const Scenario &s);
ScheduledChooser build_chooser(const Scenario &s);

/// Concrete protocol scenario drawn deterministically from `seed`: Gaussian
/// pure members, a uniform simplex point for the weights, alternating parties
/// from a random first party, and an independent random local basis for
/// every reachable outcome history.
Scenario generate_random_scenario(uint64_t seed, const RandomSpec &spec);

}  // namespace loccbench

#endif
