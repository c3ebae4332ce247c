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

#include "loccbench/distillation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace loccbench {

namespace {

void check_spec(const BellDiagonalSpec &spec) {
    if (spec.d < 2) {
        throw ValidationError("invalid Bell-diagonal spec: local dimension must be at least 2");
    }
    if (spec.probs.size() != static_cast<size_t>(spec.d * spec.d)) {
        std::stringstream ss;
        ss << "invalid Bell-diagonal spec: expected " << spec.d * spec.d << " weights, got " << spec.probs.size();
        throw ValidationError(ss.str());
    }
    double total = 0.0;
    for (double p : spec.probs) {
        if (!(p >= 0.0)) {
            throw ValidationError("invalid Bell-diagonal spec: negative weight");
        }
        total += p;
    }
    if (!(std::abs(total - 1.0) <= kDefaultTol)) {
        std::stringstream ss;
        ss << "invalid Bell-diagonal spec: weights sum to " << total;
        throw ValidationError(ss.str());
    }
}

struct LocalEntropies {
    double s;
    double s_a;
    double s_b;
    double s_bar_a;
    bool degenerate;
};

LocalEntropies local_entropies(const DensityOperator &rho) {
    auto se = spectral_ensemble(rho);
    return {von_neumann_entropy(rho), von_neumann_entropy(partial_trace(rho, Party::A)),
            von_neumann_entropy(partial_trace(rho, Party::B)), mean_local_entropy(se), se.degenerate};
}

}  // namespace

Vector generalized_bell_state(int d, int k) {
    if (d < 1 || k < 0 || k >= d * d) {
        throw ValidationError("invalid Bell index");
    }
    const int a = k / d;
    const int b = k % d;
    Vector psi = Vector::Zero(d * d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>((j * b) % d) / d;
        psi[j * d + (j + a) % d] = std::polar(norm, angle);
    }
    return psi;
}

Matrix generalized_bell_basis(int d) {
    Matrix basis(d * d, d * d);
    for (int k = 0; k < d * d; ++k) {
        basis.col(k) = generalized_bell_state(d, k);
    }
    return basis;
}

SpectralEnsemble spectral_ensemble(const DensityOperator &rho) {
    const int n = rho.dim();
    Matrix reference =
        rho.dim_a() == rho.dim_b() ? generalized_bell_basis(rho.dim_a()) : Matrix(Matrix::Identity(n, n));
    auto spectrum = hermitian_eig(rho.matrix(), reference);

    SpectralEnsemble se{rho.dim_a(), rho.dim_b(), {}, spectrum.degenerate};
    double total = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        double p = spectrum.eigenvalues[i];
        if (p > kZeroEigenvalue) {
            se.members.push_back({p, spectrum.eigenvectors.col(i)});
            total += p;
        }
    }
    for (auto &m : se.members) {
        m.probability /= total;
    }
    return se;
}

double mean_local_entropy(const SpectralEnsemble &se) {
    double side_a = 0.0;
    double side_b = 0.0;
    for (const auto &m : se.members) {
        Matrix proj = m.psi * m.psi.adjoint();
        side_a += m.probability * von_neumann_entropy(partial_trace(proj, se.dim_a, se.dim_b, Party::A));
        side_b += m.probability * von_neumann_entropy(partial_trace(proj, se.dim_a, se.dim_b, Party::B));
    }
    if (std::abs(side_a - side_b) > kDefaultTol) {
        std::stringstream ss;
        ss << "mean local entropy mismatch between sides: " << side_a << " vs " << side_b;
        throw std::logic_error(ss.str());
    }
    return side_a;
}

double dp_bound(const DensityOperator &rho) {
    auto e = local_entropies(rho);
    return e.s_a + e.s_b - e.s - e.s_bar_a;
}

DensityOperator bell_diagonal(const BellDiagonalSpec &spec) {
    check_spec(spec);
    const int n = spec.d * spec.d;
    Matrix m = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        if (spec.probs[k] > 0.0) {
            Vector psi = generalized_bell_state(spec.d, k);
            m += spec.probs[k] * psi * psi.adjoint();
        }
    }
    return validate_density(m, spec.d, spec.d);
}

HashingBound dp_bound_bell(const BellDiagonalSpec &spec) {
    check_spec(spec);
    double raw = std::log2(static_cast<double>(spec.d)) - shannon_entropy(spec.probs);
    return {raw, std::max(0.0, raw)};
}

PartialDistinguishingBound dpprime_bound(const DensityOperator &rho) {
    auto e = local_entropies(rho);
    double denom = e.s + e.s_bar_a;
    if (denom < 1e-12) {
        return {kVacuous, kVacuous};
    }
    double r = (e.s_a + e.s_b - e.s_bar_a) / denom;
    return {r * e.s_bar_a, r};
}

double dpprime_bound_bell(const BellDiagonalSpec &spec) {
    check_spec(spec);
    double log_d = std::log2(static_cast<double>(spec.d));
    return log_d * log_d / (log_d + shannon_entropy(spec.probs));
}

DistillationReport distillation_report(const DensityOperator &rho) {
    auto e = local_entropies(rho);
    DistillationReport r;
    r.S = e.s;
    r.S_A = e.s_a;
    r.S_B = e.s_b;
    r.S_bar_A = e.s_bar_a;
    r.D_P_bound = e.s_a + e.s_b - e.s - e.s_bar_a;
    auto prime = dpprime_bound(rho);
    r.D_Pprime_bound = prime.bound;
    r.r_max = prime.r_max;
    r.hashing_yield_raw = r.D_P_bound;
    r.hashing_yield = std::max(0.0, r.D_P_bound);
    auto ppt = is_ppt(rho);
    r.ppt = ppt.ppt;
    r.min_pt_eigenvalue = ppt.min_eigenvalue;
    r.degenerate_spectrum = e.degenerate;
    return r;
}

DistillationReport distillation_report(const BellDiagonalSpec &spec) {
    DistillationReport r = distillation_report(bell_diagonal(spec));
    auto hashing = dp_bound_bell(spec);
    r.bell_diagonal_closed_forms = BellClosedForms{hashing.raw, dpprime_bound_bell(spec)};
    r.hashing_yield_raw = hashing.raw;
    r.hashing_yield = hashing.hashing_yield;
    return r;
}

}  // namespace loccbench
