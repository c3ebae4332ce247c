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

#ifndef _LOCCBENCH_DISTILLATION_H
#define _LOCCBENCH_DISTILLATION_H

#include <limits>
#include <optional>
#include <vector>

#include "loccbench/entropy.h"

namespace loccbench {

/// Marks a bound the constraint leaves open (pure product input).
inline constexpr double kVacuous = std::numeric_limits<double>::infinity();

struct SpectralMember {
    double probability;
    Vector psi;
};

/// Eigen-decomposition {p_i, |psi_i>} of a state, viewed as a pure-state
/// ensemble. Zero eigenvalues are dropped.
struct SpectralEnsemble {
    int dim_a;
    int dim_b;
    std::vector<SpectralMember> members;
    bool degenerate = false;
};

/// Weights over the d^2 generalized Bell states.
struct BellDiagonalSpec {
    int d;
    std::vector<double> probs;
};

/// (I (x) X^a Z^b)|Phi_d> for k = a*d + b, with X the shift and Z the clock.
/// For d = 2 this gives Phi+, Phi-, Psi+, Psi-.
Vector generalized_bell_state(int d, int k);
/// All d^2 generalized Bell states as columns.
Matrix generalized_bell_basis(int d);

SpectralEnsemble spectral_ensemble(const DensityOperator &rho);

/// sum_i p_i S(tr_B |psi_i><psi_i|). Throws if the B-side value differs by
/// more than 1e-9.
double mean_local_entropy(const SpectralEnsemble &se);

/// S_A + S_B - S - mean local entropy; may be negative.
double dp_bound(const DensityOperator &rho);

DensityOperator bell_diagonal(const BellDiagonalSpec &spec);

struct HashingBound {
    double raw;
    double hashing_yield;  // max(0, raw)
};
HashingBound dp_bound_bell(const BellDiagonalSpec &spec);

struct PartialDistinguishingBound {
    double bound;  // r_max * mean local entropy, or kVacuous
    double r_max;  // or kVacuous
};
PartialDistinguishingBound dpprime_bound(const DensityOperator &rho);

double dpprime_bound_bell(const BellDiagonalSpec &spec);

struct BellClosedForms {
    double dp;       // log2 d - S
    double dpprime;  // (log2 d)^2 / (log2 d + S)
};

struct DistillationReport {
    double S = 0.0;
    double S_A = 0.0;
    double S_B = 0.0;
    double S_bar_A = 0.0;
    double D_P_bound = 0.0;  // raw
    double D_Pprime_bound = 0.0;
    double r_max = 0.0;
    std::optional<BellClosedForms> bell_diagonal_closed_forms;
    double hashing_yield = 0.0;
    double hashing_yield_raw = 0.0;
    bool ppt = false;
    double min_pt_eigenvalue = 0.0;
    bool degenerate_spectrum = false;
};

DistillationReport distillation_report(const DensityOperator &rho);
DistillationReport distillation_report(const BellDiagonalSpec &spec);

}  // namespace loccbench

#endif
