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

#ifndef _LOCCBENCH_ENTROPY_H
#define _LOCCBENCH_ENTROPY_H

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "loccbench/linalg.h"

namespace loccbench {

/// Eigenvalues below this are exact zeros inside entropy sums.
inline constexpr double kZeroEigenvalue = 1e-12;

struct EnsembleMember {
    double probability;
    DensityOperator state;
};

/// Weighted collection {p_x, rho_x} of states on a common bipartite space.
/// Members keep their index for the lifetime of a protocol run, so a member
/// may carry probability zero.
class BipartiteEnsemble {
   public:
    explicit BipartiteEnsemble(std::vector<EnsembleMember> members, double tol = kDefaultTol);

    const std::vector<EnsembleMember> &members() const {
        return members_;
    }
    size_t size() const {
        return members_.size();
    }
    int dim_a() const {
        return members_.front().state.dim_a();
    }
    int dim_b() const {
        return members_.front().state.dim_b();
    }
    std::vector<double> probabilities() const;

    DensityOperator average_state() const;
    /// Reduced states of every member on `side`.
    std::vector<Matrix> marginals(Party side) const;

   private:
    std::vector<EnsembleMember> members_;
};

/// Which quantity stands in for an entanglement measure.
enum class Measure { EntropyOfEntanglementPure, EofTwoQubit, Auto };

std::string_view measure_name(Measure m);
Measure parse_measure(std::string_view name);

double shannon_entropy(std::span<const double> p);
double von_neumann_entropy(const Matrix &rho);
double von_neumann_entropy(const DensityOperator &rho);

/// S(sum_x p_x rho_x) - sum_x p_x S(rho_x).
double holevo_chi(std::span<const double> probabilities, std::span<const Matrix> states);
double holevo_chi(const BipartiteEnsemble &ens);
double holevo_chi(const BipartiteEnsemble &ens, Party side);

double purity(const DensityOperator &rho);
bool is_pure(const DensityOperator &rho);

/// Wootters concurrence of a 2x2 state.
double concurrence(const DensityOperator &rho);
/// Binary entropy of (1 + sqrt(1 - C^2)) / 2.
double eof_from_concurrence(double c);

double entanglement(const DensityOperator &rho, Measure selector);

struct PptResult {
    bool ppt;
    double min_eigenvalue;
};
PptResult is_ppt(const DensityOperator &rho);

}  // namespace loccbench

#endif
