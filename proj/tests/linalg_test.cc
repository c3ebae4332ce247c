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

#include <doctest.h>

#include "oracles/oracles.h"
#include "test_util.h"

using namespace loccbench;
using namespace loccbench::testing;

TEST_CASE("validate_density accepts the maximally mixed qubit") {
    Matrix m = Matrix::Identity(2, 2) * 0.5;
    auto rho = validate_density(m, 2, 1, 1e-9);
    CHECK(rho.dim_a() == 2);
    CHECK(rho.dim_b() == 1);
    CHECK((rho.matrix() - m).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("validate_density error paths") {
    Matrix half = Matrix::Identity(2, 2) * 0.25;
    CHECK_THROWS_WITH_AS(validate_density(half, 2, 1), doctest::Contains("trace deviation"), ValidationError);

    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 0) = 0.5;
    skew(1, 1) = 0.5;
    skew(0, 1) = 1.0;
    CHECK_THROWS_WITH_AS(validate_density(skew, 2, 1), doctest::Contains("not Hermitian"), ValidationError);

    CHECK_THROWS_WITH_AS(validate_density(Matrix::Identity(3, 3) / 3.0, 2, 2), doctest::Contains("dimension mismatch"),
                         ValidationError);

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    CHECK_THROWS_WITH_AS(validate_density(neg, 2, 1), doctest::Contains("negative eigenvalue"), ValidationError);
}

TEST_CASE("validate_density clips rounding-level negative eigenvalues") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0 + 5e-10;
    m(1, 1) = -5e-10;
    auto rho = validate_density(m, 2, 1, 1e-9);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    CHECK(es.eigenvalues().minCoeff() >= -1e-15);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-15);
}

TEST_CASE("partial_trace examples") {
    auto phi = DensityOperator::pure(phi_plus(), 2, 2);
    Matrix half_id = Matrix::Identity(2, 2) * 0.5;
    CHECK((partial_trace(phi, Party::A) - half_id).cwiseAbs().maxCoeff() < 1e-15);

    std::mt19937_64 rng(11);
    auto ra = random_state(rng, 2, 1, 2);
    auto rb = random_state(rng, 3, 1, 3);
    auto product = validate_density(detail::kron(ra.matrix(), rb.matrix()), 2, 3);
    CHECK((partial_trace(product, Party::A) - ra.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(product, Party::B) - rb.matrix()).cwiseAbs().maxCoeff() < 1e-12);

    Matrix classical = Matrix::Zero(4, 4);
    classical(0, 0) = 0.5;
    classical(3, 3) = 0.5;
    CHECK((partial_trace(validate_density(classical, 2, 2), Party::B) - half_id).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial traces keep unit trace") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int da = 1 + trial % 3;
        int db = 1 + (trial / 3) % 3;
        auto rho = random_state(rng, da, db, 1 + trial % (da * db));
        CHECK(std::abs(partial_trace(rho, Party::A).trace() - Complex(1.0)) <= 1e-9);
        CHECK(std::abs(partial_trace(rho, Party::B).trace() - Complex(1.0)) <= 1e-9);
    }
}

TEST_CASE("hermitian_eig examples") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.9;
    d(1, 1) = 0.1;
    auto s = hermitian_eig(d);
    CHECK(s.eigenvalues[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(s.eigenvalues[1] == doctest::Approx(0.9).epsilon(1e-14));

    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    s = hermitian_eig(x);
    CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0));
    // First nonzero component real positive fixes the phase.
    CHECK(std::abs(s.eigenvectors(0, 0) - Complex(kInvSqrt2)) < 1e-12);
    CHECK(std::abs(s.eigenvectors(1, 0) + Complex(kInvSqrt2)) < 1e-12);
    CHECK(std::abs(s.eigenvectors(0, 1) - Complex(kInvSqrt2)) < 1e-12);
    CHECK(std::abs(s.eigenvectors(1, 1) - Complex(kInvSqrt2)) < 1e-12);

    s = hermitian_eig(Matrix::Identity(2, 2) * 0.5);
    CHECK(s.degenerate);
    CHECK(s.eigenvalues[0] == doctest::Approx(0.5));
    CHECK(s.eigenvalues[1] == doctest::Approx(0.5));
    CHECK((s.eigenvectors - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(bad), ValidationError);
}

TEST_CASE("hermitian_eig degenerate cluster follows the computational reference") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Vector v = random_vector(rng, 4);
        Matrix complement = Matrix::Identity(4, 4) - proj(v);
        auto s = hermitian_eig(hermitian_part(0.3 * Matrix::Identity(4, 4) - 0.2 * proj(v)));
        CHECK(s.degenerate);
        Matrix cluster = s.eigenvectors.rightCols(3);
        CHECK((cluster * cluster.adjoint() - complement).cwiseAbs().maxCoeff() < 1e-10);
        // Expected: Gram-Schmidt of complement * e_0, e_1, e_2.
        Matrix expected(4, 3);
        for (int j = 0; j < 3; ++j) {
            Vector w = complement.col(j);
            for (int q = 0; q < j; ++q) {
                w -= expected.col(q) * expected.col(q).dot(w);
            }
            w.normalize();
            int first = 0;
            while (std::abs(w[first]) <= 1e-10) {
                ++first;
            }
            w *= std::conj(w[first]) / std::abs(w[first]);
            expected.col(j) = w;
        }
        CHECK((cluster - expected).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("hermitian_eig canonical basis is invariant under basis rotation inside a cluster") {
    std::mt19937_64 rng(8);
    RealVector spec(3);
    spec << 0.2, 0.4, 0.4;
    Matrix reference;
    for (int trial = 0; trial < 5; ++trial) {
        // Rotate only within the degenerate block: the matrix is unchanged up
        // to rounding, so the returned basis must be too.
        Matrix rot = Matrix::Identity(3, 3);
        rot.bottomRightCorner(2, 2) = oracle::random_unitary(rng, 2);
        Matrix m = hermitian_part(rot * spec.cast<Complex>().asDiagonal() * rot.adjoint());
        auto s = hermitian_eig(m);
        if (trial == 0) {
            reference = s.eigenvectors;
        } else {
            CHECK((s.eigenvectors - reference).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("hermitian_eig reconstruction and orthonormality on random matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + trial % 7;
        Matrix m = random_hermitian(rng, n);
        auto s = hermitian_eig(m);
        Matrix rebuilt = s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
        REQUIRE((rebuilt - m).cwiseAbs().maxCoeff() <= 1e-9);
        REQUIRE((s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9);
        for (int i = 1; i < n; ++i) {
            REQUIRE(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
        }
    }
}

TEST_CASE("eigenvalues of a state sum to one") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        auto rho = random_state(rng, 2, 3, 1 + trial % 6);
        CHECK(std::abs(hermitian_eig(rho.matrix()).eigenvalues.sum() - 1.0) <= 1e-9);
    }
}

TEST_CASE("partial_transpose examples") {
    auto phi = DensityOperator::pure(phi_plus(), 2, 2);
    auto evals = oracle::jacobi_eigenvalues(partial_transpose(phi, Party::B));
    CHECK(evals.front() == doctest::Approx(-0.5).epsilon(1e-12));

    std::mt19937_64 rng(9);
    auto ra = random_state(rng, 2, 1, 2);
    auto rb = random_state(rng, 2, 1, 2);
    auto product = validate_density(detail::kron(ra.matrix(), rb.matrix()), 2, 2);
    CHECK(oracle::jacobi_eigenvalues(partial_transpose(product, Party::B)).front() >= -1e-12);

    Matrix classical = Matrix::Zero(4, 4);
    classical(0, 0) = 0.5;
    classical(3, 3) = 0.5;
    auto c = validate_density(classical, 2, 2);
    CHECK((partial_transpose(c, Party::B) - classical).cwiseAbs().maxCoeff() == 0.0);
    CHECK((partial_transpose(c, Party::A) - classical).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial_transpose is an involution and preserves Hermiticity") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        int da = 1 + trial % 3;
        int db = 1 + (trial / 3) % 4;
        auto rho = random_state(rng, da, db, 2);
        for (Party p : {Party::A, Party::B}) {
            Matrix once = partial_transpose(rho, p);
            CHECK(hermiticity_error(once) <= 1e-14);
            Matrix twice = partial_transpose(once, da, db, p);
            CHECK((twice - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
        }
        // Transposing both parties is the full transpose.
        Matrix both = partial_transpose(partial_transpose(rho, Party::A), da, db, Party::B);
        CHECK((both - rho.matrix().transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    }
}
