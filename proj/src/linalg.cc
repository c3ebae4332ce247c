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

#include "loccbench/linalg.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace loccbench {

namespace {

constexpr double kClusterGap = 1e-10;
constexpr double kPhaseThreshold = 1e-10;

void fix_phase(Eigen::Ref<Vector> v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double mag = std::abs(v[i]);
        if (mag > kPhaseThreshold) {
            v *= std::conj(v[i]) / mag;
            v[i] = Complex(mag, 0.0);
            return;
        }
    }
}

// Canonical orthonormal basis of the span of `cluster` (columns), built from
// the reference columns in order.
Matrix canonical_cluster_basis(const Matrix &cluster, const Matrix &reference) {
    const Eigen::Index k = cluster.cols();
    Matrix projector = cluster * cluster.adjoint();
    Matrix basis(cluster.rows(), k);
    Eigen::Index found = 0;
    for (Eigen::Index j = 0; j < reference.cols() && found < k; ++j) {
        Vector w = projector * reference.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index q = 0; q < found; ++q) {
                w -= basis.col(q) * basis.col(q).dot(w);
            }
        }
        double norm = w.norm();
        if (norm > 1e-6) {
            basis.col(found++) = w / norm;
        }
    }
    if (found < k) {
        return cluster;
    }
    return basis;
}

}  // namespace

const char *party_name(Party p) {
    return p == Party::A ? "A" : "B";
}

double hermiticity_error(const Matrix &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix &m) {
    return (m + m.adjoint()) * 0.5;
}

DensityOperator DensityOperator::pure(const Vector &psi, int dim_a, int dim_b) {
    double norm = psi.norm();
    if (norm == 0.0) {
        throw ValidationError("zero vector: cannot build a pure state");
    }
    Vector v = psi / norm;
    return validate_density(v * v.adjoint(), dim_a, dim_b);
}

DensityOperator validate_density(const Matrix &matrix, int dim_a, int dim_b, double tol) {
    if (dim_a <= 0 || dim_b <= 0) {
        throw ValidationError("dimension mismatch: subsystem dimensions must be positive");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
    if (matrix.rows() != n || matrix.cols() != n) {
        std::stringstream ss;
        ss << "dimension mismatch: expected " << n << "x" << n << " for dims (" << dim_a << "," << dim_b << "), got "
           << matrix.rows() << "x" << matrix.cols();
        throw ValidationError(ss.str());
    }
    double herm = hermiticity_error(matrix);
    if (!(herm <= tol)) {
        std::stringstream ss;
        ss << "not Hermitian: max |M - M^dagger| = " << herm;
        throw ValidationError(ss.str());
    }
    Complex tr = matrix.trace();
    if (!(std::abs(tr - Complex(1.0, 0.0)) <= tol)) {
        std::stringstream ss;
        ss << "trace deviation: trace = " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag()) << "i";
        throw ValidationError(ss.str());
    }
    Matrix h = hermitian_part(matrix);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    RealVector evals = solver.eigenvalues();
    if (evals.minCoeff() < -tol) {
        std::stringstream ss;
        ss << "negative eigenvalue: " << evals.minCoeff();
        throw ValidationError(ss.str());
    }
    if (evals.minCoeff() < 0.0) {
        RealVector clipped = evals.cwiseMax(0.0);
        const Matrix &v = solver.eigenvectors();
        h = v * clipped.cast<Complex>().asDiagonal() * v.adjoint();
        h = hermitian_part(h);
    }
    h /= h.trace().real();
    return DensityOperator(std::move(h), dim_a, dim_b);
}

Matrix partial_trace(const Matrix &m, int dim_a, int dim_b, Party keep) {
    if (keep == Party::A) {
        Matrix out = Matrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i) {
            for (int k = 0; k < dim_a; ++k) {
                Complex acc = 0;
                for (int j = 0; j < dim_b; ++j) {
                    acc += m(i * dim_b + j, k * dim_b + j);
                }
                out(i, k) = acc;
            }
        }
        return out;
    }
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int j = 0; j < dim_b; ++j) {
        for (int l = 0; l < dim_b; ++l) {
            Complex acc = 0;
            for (int i = 0; i < dim_a; ++i) {
                acc += m(i * dim_b + j, i * dim_b + l);
            }
            out(j, l) = acc;
        }
    }
    return out;
}

Matrix partial_trace(const DensityOperator &rho, Party keep) {
    return partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), keep);
}

HermitianSpectrum hermitian_eig(const Matrix &m, double tol) {
    return hermitian_eig(m, Matrix::Identity(m.rows(), m.cols()), tol);
}

HermitianSpectrum hermitian_eig(const Matrix &m, const Matrix &reference, double tol) {
    double herm = hermiticity_error(m);
    if (!(herm <= tol)) {
        std::stringstream ss;
        ss << "not Hermitian: max |M - M^dagger| = " << herm;
        throw ValidationError(ss.str());
    }
    if (reference.rows() != m.rows() || reference.cols() != m.cols()) {
        throw ValidationError("dimension mismatch: reference basis must match the matrix size");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
    HermitianSpectrum out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();

    const Eigen::Index n = out.eigenvalues.size();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && out.eigenvalues[end] - out.eigenvalues[end - 1] < kClusterGap) {
            ++end;
        }
        if (end - start > 1) {
            out.degenerate = true;
            Matrix block = out.eigenvectors.middleCols(start, end - start);
            out.eigenvectors.middleCols(start, end - start) = canonical_cluster_basis(block, reference);
        }
        start = end;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        fix_phase(out.eigenvectors.col(i));
    }
    return out;
}

Matrix partial_transpose(const Matrix &m, int dim_a, int dim_b, Party party) {
    Matrix out(m.rows(), m.cols());
    for (int i = 0; i < dim_a; ++i) {
        for (int j = 0; j < dim_b; ++j) {
            for (int k = 0; k < dim_a; ++k) {
                for (int l = 0; l < dim_b; ++l) {
                    Complex v = party == Party::B ? m(i * dim_b + l, k * dim_b + j) : m(k * dim_b + j, i * dim_b + l);
                    out(i * dim_b + j, k * dim_b + l) = v;
                }
            }
        }
    }
    return out;
}

Matrix partial_transpose(const DensityOperator &rho, Party party) {
    return partial_transpose(rho.matrix(), rho.dim_a(), rho.dim_b(), party);
}

namespace detail {

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return out;
}

Matrix embed_local(const Matrix &k, Party party, int dim_a, int dim_b) {
    if (party == Party::A) {
        return kron(k, Matrix::Identity(dim_b, dim_b));
    }
    return kron(Matrix::Identity(dim_a, dim_a), k);
}

}  // namespace detail

}  // namespace loccbench
