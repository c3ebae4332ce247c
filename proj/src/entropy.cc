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

#include "loccbench/entropy.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace loccbench {

namespace {

double entropy_of_spectrum(const RealVector &evals) {
    double s = 0.0;
    for (double v : evals) {
        if (v > kZeroEigenvalue) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

void check_state_matrix(const Matrix &rho) {
    double herm = hermiticity_error(rho);
    if (!(herm <= kDefaultTol)) {
        throw ValidationError("invalid state: not Hermitian");
    }
    if (!(std::abs(rho.trace() - Complex(1.0, 0.0)) <= kDefaultTol)) {
        throw ValidationError("invalid state: trace deviation");
    }
}

Matrix sqrt_psd(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
    RealVector roots = solver.eigenvalues().unaryExpr([](double v) { return v > kZeroEigenvalue ? std::sqrt(v) : 0.0; });
    return solver.eigenvectors() * roots.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

BipartiteEnsemble::BipartiteEnsemble(std::vector<EnsembleMember> members, double tol) : members_(std::move(members)) {
    if (members_.empty()) {
        throw ValidationError("invalid ensemble: no members");
    }
    double total = 0.0;
    for (size_t k = 0; k < members_.size(); ++k) {
        const auto &m = members_[k];
        if (!(m.probability >= 0.0)) {
            std::stringstream ss;
            ss << "invalid ensemble: member " << k << " has negative probability " << m.probability;
            throw ValidationError(ss.str());
        }
        if (m.state.dim_a() != dim_a() || m.state.dim_b() != dim_b()) {
            std::stringstream ss;
            ss << "dimension mismatch: member " << k << " has dims (" << m.state.dim_a() << "," << m.state.dim_b()
               << "), expected (" << dim_a() << "," << dim_b() << ")";
            throw ValidationError(ss.str());
        }
        total += m.probability;
    }
    if (!(std::abs(total - 1.0) <= tol)) {
        std::stringstream ss;
        ss << "invalid ensemble: probabilities sum to " << total;
        throw ValidationError(ss.str());
    }
}

std::vector<double> BipartiteEnsemble::probabilities() const {
    std::vector<double> out;
    out.reserve(members_.size());
    for (const auto &m : members_) {
        out.push_back(m.probability);
    }
    return out;
}

DensityOperator BipartiteEnsemble::average_state() const {
    Matrix avg = Matrix::Zero(dim_a() * dim_b(), dim_a() * dim_b());
    double total = 0.0;
    for (const auto &m : members_) {
        avg += m.probability * m.state.matrix();
        total += m.probability;
    }
    return validate_density(avg / total, dim_a(), dim_b());
}

std::vector<Matrix> BipartiteEnsemble::marginals(Party side) const {
    std::vector<Matrix> out;
    out.reserve(members_.size());
    for (const auto &m : members_) {
        out.push_back(partial_trace(m.state, side));
    }
    return out;
}

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::EntropyOfEntanglementPure:
            return "entropy_of_entanglement_pure";
        case Measure::EofTwoQubit:
            return "eof_two_qubit";
        case Measure::Auto:
            return "auto";
    }
    return "auto";
}

Measure parse_measure(std::string_view name) {
    if (name == "entropy_of_entanglement_pure") {
        return Measure::EntropyOfEntanglementPure;
    }
    if (name == "eof_two_qubit") {
        return Measure::EofTwoQubit;
    }
    if (name == "auto") {
        return Measure::Auto;
    }
    throw ValidationError("unknown measure selector '" + std::string(name) + "'");
}

double shannon_entropy(std::span<const double> p) {
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) {
            throw ValidationError("negative entry in probability vector");
        }
        total += v;
    }
    if (!(std::abs(total - 1.0) <= kDefaultTol)) {
        throw ValidationError("probability vector not normalized");
    }
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) {
            h -= v * std::log2(v);
        }
    }
    return h;
}

double von_neumann_entropy(const Matrix &rho) {
    check_state_matrix(rho);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(rho), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kDefaultTol) {
        throw ValidationError("invalid state: negative eigenvalue");
    }
    return entropy_of_spectrum(solver.eigenvalues());
}

double von_neumann_entropy(const DensityOperator &rho) {
    return von_neumann_entropy(rho.matrix());
}

double holevo_chi(std::span<const double> probabilities, std::span<const Matrix> states) {
    if (probabilities.size() != states.size() || states.empty()) {
        throw ValidationError("invalid ensemble: probability/state count mismatch");
    }
    double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    if (!(std::abs(total - 1.0) <= kDefaultTol)) {
        throw ValidationError("invalid ensemble: probabilities sum to " + std::to_string(total));
    }
    Matrix avg = Matrix::Zero(states[0].rows(), states[0].cols());
    double mean_entropy = 0.0;
    for (size_t k = 0; k < states.size(); ++k) {
        if (probabilities[k] < 0.0) {
            throw ValidationError("invalid ensemble: negative probability");
        }
        if (states[k].rows() != avg.rows() || states[k].cols() != avg.cols()) {
            throw ValidationError("dimension mismatch: ensemble states differ in size");
        }
        avg += probabilities[k] * states[k];
        if (probabilities[k] > 0.0) {
            mean_entropy += probabilities[k] * von_neumann_entropy(states[k]);
        }
    }
    return von_neumann_entropy(Matrix(avg / total)) - mean_entropy;
}

double holevo_chi(const BipartiteEnsemble &ens) {
    std::vector<Matrix> states;
    states.reserve(ens.size());
    for (const auto &m : ens.members()) {
        states.push_back(m.state.matrix());
    }
    auto p = ens.probabilities();
    return holevo_chi(p, states);
}

double holevo_chi(const BipartiteEnsemble &ens, Party side) {
    auto p = ens.probabilities();
    auto states = ens.marginals(side);
    return holevo_chi(p, states);
}

double purity(const DensityOperator &rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

bool is_pure(const DensityOperator &rho) {
    return purity(rho) >= 1.0 - 1e-9;
}

double concurrence(const DensityOperator &rho) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2) {
        throw ValidationError("measure unavailable: concurrence needs a 2x2 state");
    }
    Matrix sy(2, 2);
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    Matrix yy = detail::kron(sy, sy);
    Matrix root = sqrt_psd(rho.matrix());
    // Singular values of sqrt(rho) * sqrt(rho~) with rho~ = YY rho* YY; the
    // trailing YY is unitary and drops out.
    Matrix product = root * yy * root.conjugate();
    Eigen::JacobiSVD<Matrix> svd(product);
    RealVector s = svd.singularValues();  // descending
    double c = s[0] - s[1] - s[2] - s[3];
    return std::clamp(c, 0.0, 1.0);
}

double eof_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    double h = 0.0;
    for (double v : {x, 1.0 - x}) {
        if (v > 0.0) {
            h -= v * std::log2(v);
        }
    }
    return h;
}

double entanglement(const DensityOperator &rho, Measure selector) {
    const bool two_qubit = rho.dim_a() == 2 && rho.dim_b() == 2;
    if (selector == Measure::Auto) {
        if (is_pure(rho)) {
            selector = Measure::EntropyOfEntanglementPure;
        } else if (two_qubit) {
            selector = Measure::EofTwoQubit;
        } else {
            throw ValidationError("measure unavailable: mixed state outside 2x2 has no computable measure");
        }
    }
    double upper = std::log2(static_cast<double>(std::min(rho.dim_a(), rho.dim_b())));
    double value = 0.0;
    if (selector == Measure::EntropyOfEntanglementPure) {
        if (!is_pure(rho)) {
            throw ValidationError("measure unavailable: entropy of entanglement needs a pure state");
        }
        value = von_neumann_entropy(partial_trace(rho, Party::A));
    } else {
        if (!two_qubit) {
            throw ValidationError("measure unavailable: two-qubit entanglement of formation needs dims (2,2)");
        }
        value = eof_from_concurrence(concurrence(rho));
    }
    return std::clamp(value, 0.0, upper);
}

PptResult is_ppt(const DensityOperator &rho) {
    Matrix pt = partial_transpose(rho, Party::B);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(pt), Eigen::EigenvaluesOnly);
    double min_ev = solver.eigenvalues().minCoeff();
    return {min_ev >= -1e-9, min_ev};
}

}  // namespace loccbench
