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

#ifndef _LOCCBENCH_PROTOCOL_H
#define _LOCCBENCH_PROTOCOL_H

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loccbench/entropy.h"

namespace loccbench {

/// Branches with probability below this are dropped.
inline constexpr double kPruneThreshold = 1e-12;

using History = std::vector<std::string>;

struct KrausOutcome {
    std::string label;
    Matrix kraus;
};

/// One local measurement step: outcome-labelled Kraus operators acting on
/// a single party. Construction enforces sum_k K_k^dagger K_k = I.
class KrausInstrument {
   public:
    KrausInstrument(Party party, std::vector<KrausOutcome> outcomes, double tol = kDefaultTol);

    /// Rank-one projectors onto the columns of `basis` (must be unitary).
    static KrausInstrument projective(Party party, const Matrix &basis, std::vector<std::string> labels);

    Party party() const {
        return party_;
    }
    int dim() const {
        return static_cast<int>(outcomes_.front().kraus.rows());
    }
    const std::vector<KrausOutcome> &outcomes() const {
        return outcomes_;
    }

   private:
    Party party_;
    std::vector<KrausOutcome> outcomes_;
};

struct Branch {
    std::string label;
    double probability;
    BipartiteEnsemble posterior;
};

/// Applies the instrument to every member and returns the surviving outcomes
/// with Bayes-updated posteriors. Member order is preserved; members that an
/// outcome rules out keep their prior state with weight zero.
std::vector<Branch> measure_branch(const BipartiteEnsemble &ens, const KrausInstrument &instr);

/// Picks the instrument for the next round given the outcomes so far.
/// Returning nullopt means the protocol is undefined at that history.
using InstrumentChooser = std::function<std::optional<KrausInstrument>(const History &)>;

struct TranscriptNode {
    History path;
    double probability;  // p_{a,b,...(k)}
    BipartiteEnsemble posterior;
    std::optional<Party> acting;  // party of the step that produced this node
    int parent = -1;
    std::vector<int> children;
    int depth = 0;
};

/// Outcome tree of a multi-round protocol. Node 0 is the root.
class ProtocolTranscript {
   public:
    ProtocolTranscript(std::vector<TranscriptNode> nodes, int depth);

    const BipartiteEnsemble &root() const {
        return nodes_.front().posterior;
    }
    const std::vector<TranscriptNode> &nodes() const {
        return nodes_;
    }
    int depth() const {
        return depth_;
    }
    std::vector<int> nodes_at_depth(int k) const;
    std::vector<int> leaves() const {
        return nodes_at_depth(depth_);
    }

   private:
    std::vector<TranscriptNode> nodes_;
    int depth_;
};

ProtocolTranscript run_protocol(const BipartiteEnsemble &ens, const InstrumentChooser &chooser, int depth);

/// Chooser backed by a per-round default plus per-history overrides.
class ScheduledChooser {
   public:
    void set_round(size_t round, KrausInstrument instr);
    void set_override(History history, KrausInstrument instr);
    std::optional<KrausInstrument> operator()(const History &history) const;

   private:
    std::vector<std::optional<KrausInstrument>> rounds_;
    std::map<History, KrausInstrument> overrides_;
};

struct ChainInformation {
    std::vector<double> per_round;
    double total;
};

/// I(X; Y_k | Y_1..Y_{k-1}) per round and I(X; Y_1..Y_n), from the exact tree.
ChainInformation chain_mutual_information(const ProtocolTranscript &t);

double average_output_entanglement(const ProtocolTranscript &t, Measure sel);
double average_input_entanglement(const BipartiteEnsemble &ens, Measure sel);

struct BoundReport {
    double I_locc = 0.0;
    std::vector<double> per_round_I;
    double E_out_avg = 0.0;
    double E_in_avg = 0.0;
    double N_qubits = 0.0;
    double bound_sei = 0.0;
    std::optional<double> bound_asol;
    std::optional<double> bound_asol25;
    double bound_asol1 = 0.0;
    double bound_ghyama = 0.0;

    double slack_sei() const {
        return bound_sei - I_locc;
    }
    std::optional<double> slack_asol() const;
    std::optional<double> slack_asol25() const;
    double slack_asol1() const {
        return bound_asol1 - I_locc;
    }
    /// Complementarity: N - E_in >= I_locc + E_out.
    double slack_ghyama() const {
        return bound_ghyama - I_locc;
    }
    bool all_slacks_at_least(double threshold) const;
};

/// Evaluates every LOCC bound on the transcript. The asol terms are keyed on
/// the recorded acting party; they are left empty for depth-0 transcripts or
/// when the last round is not performed by the same party on every branch.
BoundReport bound_suite(const ProtocolTranscript &t, Measure sel_in, Measure sel_out);

struct RoundAudit {
    int round;  // 1-based
    double information;
    double lemma1_slack;
    double lemma1_worst_node_slack;
    double distant_marginal_deviation;
    double entropy_drop_slack;

    bool passes(double slack_tol, double marginal_tol = kDefaultTol) const;
};

std::vector<RoundAudit> audit_rounds(const ProtocolTranscript &t);

}  // namespace loccbench

#endif
