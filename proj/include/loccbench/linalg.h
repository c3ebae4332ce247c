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

#ifndef _LOCCBENCH_LINALG_H
#define _LOCCBENCH_LINALG_H

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace loccbench {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kSlackTol = 1e-7;

/// Input rejected for a physical or dimensional reason. Error messages start
/// with a short stable tag ("trace deviation", "not Hermitian", ...).
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class Party { A, B };

inline Party other(Party p) {
    return p == Party::A ? Party::B : Party::A;
}
const char *party_name(Party p);

/// A validated state on C^{d_A} (x) C^{d_B}. Alice's index is the slow index,
/// i.e. basis element |i>|j> sits at row i * d_B + j.
class DensityOperator {
   public:
    int dim_a() const {
        return dim_a_;
    }
    int dim_b() const {
        return dim_b_;
    }
    int dim() const {
        return dim_a_ * dim_b_;
    }
    const Matrix &matrix() const {
        return matrix_;
    }

    /// Projector onto a normalized copy of `psi`.
    static DensityOperator pure(const Vector &psi, int dim_a, int dim_b);

   private:
    DensityOperator(Matrix m, int dim_a, int dim_b) : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(m)) {
    }
    friend DensityOperator validate_density(const Matrix &, int, int, double);

    int dim_a_;
    int dim_b_;
    Matrix matrix_;
};

/// Checks shape, Hermiticity, trace and positivity. Eigenvalues in [-tol, 0)
/// are clipped and the result renormalized; anything more negative throws.
DensityOperator validate_density(const Matrix &matrix, int dim_a, int dim_b, double tol = kDefaultTol);

/// Reduced state of the kept party.
Matrix partial_trace(const DensityOperator &rho, Party keep);
Matrix partial_trace(const Matrix &m, int dim_a, int dim_b, Party keep);

struct HermitianSpectrum {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // column i pairs with eigenvalues[i]
    bool degenerate = false;
};

/// Full eigendecomposition with a deterministic basis inside degenerate
/// clusters (consecutive gap < 1e-10): the cluster is spanned by Gram-Schmidt
/// over the projected columns of `reference` in order, and each vector gets
/// its first nonzero computational component real positive.
HermitianSpectrum hermitian_eig(const Matrix &m, double tol = kDefaultTol);
HermitianSpectrum hermitian_eig(const Matrix &m, const Matrix &reference, double tol = kDefaultTol);

Matrix partial_transpose(const DensityOperator &rho, Party party);
Matrix partial_transpose(const Matrix &m, int dim_a, int dim_b, Party party);

double hermiticity_error(const Matrix &m);
Matrix hermitian_part(const Matrix &m);

namespace detail {

Matrix kron(const Matrix &a, const Matrix &b);
Vector kron(const Vector &a, const Vector &b);
/// K (x) I for party A, I (x) K for party B.
Matrix embed_local(const Matrix &k, Party party, int dim_a, int dim_b);

}  // namespace detail

}  // namespace loccbench

#endif
