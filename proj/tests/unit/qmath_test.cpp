// Copyright 2026 The rmetro Authors
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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/matrix.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/qmath/rng.hpp"
#include "rmetro/qmath/tolerances.hpp"
#include "test_support.hpp"

namespace rmetro {
namespace {

using testing::max_diff;
using testing::pauli_i;
using testing::pauli_x;
using testing::pauli_y;
using testing::pauli_z;

TEST(Matrix, PauliAlgebra) {
    const cplx i(0, 1);
    EXPECT_LT(max_diff(pauli_x() * pauli_y(), i * pauli_z()), 1e-15);
    EXPECT_LT(max_diff(commutator(pauli_x(), pauli_y()), cplx(0, 2) * pauli_z()), 1e-15);
    EXPECT_LT(max_diff(anticommutator(pauli_x(), pauli_z()), CMatrix(2, 2)), 1e-15);
    EXPECT_EQ(pauli_z().trace(), cplx(0));
}

TEST(Matrix, KronAgainstHandWritten) {
    // X (x) Z
    const CMatrix expected(4, 4, {0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0});
    EXPECT_EQ(kron(pauli_x(), pauli_z()), expected);
    const CVector ket = kron(basis_vector(2, 1), basis_vector(2, 0));
    EXPECT_EQ(ket, basis_vector(4, 2));
}

TEST(Matrix, ProductMatchesNaive) {
    Rng rng(7);
    const CMatrix a = random_unitary(5, rng);
    const CMatrix b = random_hermitian(5, rng);
    EXPECT_LT(max_diff(a * b, testing::naive_mul(a, b)), 1e-13);
    EXPECT_NEAR(std::abs(trace_product(a, b) - testing::naive_trace(testing::naive_mul(a, b))), 0, 1e-13);
}

TEST(Matrix, AdjointAndHermiticity) {
    Rng rng(11);
    const CMatrix h = random_hermitian(4, rng);
    EXPECT_LT(hermiticity_gap(h), 1e-15);
    const CMatrix u = random_unitary(4, rng);
    EXPECT_LT(max_diff(u * u.adjoint(), CMatrix::identity(4)), 1e-12);
    EXPECT_GT(hermiticity_gap(u), 1e-3);
}

TEST(Linalg, EighTwoByTwo) {
    const CMatrix h(2, 2, {2, 1, 1, 2});
    const HermEig e = eigh(h);
    ASSERT_EQ(e.eigenvalues.size(), 2u);
    EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues[1], 3.0, 1e-14);
}

TEST(Linalg, EighReconstructsRandomHermitian) {
    Rng rng(12);
    for (std::size_t d : {2u, 3u, 6u, 9u}) {
        const CMatrix h = random_hermitian(d, rng);
        const HermEig e = eigh(h);
        EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
        const CMatrix rebuilt = e.apply([](double x) { return x; });
        EXPECT_LT(max_diff(rebuilt, h), 1e-12) << "d=" << d;
        const CMatrix &v = e.eigenvectors;
        EXPECT_LT(max_diff(v.adjoint() * v, CMatrix::identity(d)), 1e-12);
        // Trace and Frobenius norm are spectral invariants.
        double tr = 0, sq = 0;
        for (double l : e.eigenvalues) {
            tr += l;
            sq += l * l;
        }
        EXPECT_NEAR(tr, h.trace().real(), 1e-12);
        EXPECT_NEAR(std::sqrt(sq), h.frobenius_norm(), 1e-12);
    }
}

TEST(Linalg, EighRejectsNonHermitian) {
    const CMatrix a(2, 2, {0, 1, 0, 0});
    EXPECT_THROW(eigh(a), NumericalError);
    EXPECT_THROW(eigh(CMatrix(2, 3)), DimensionError);
}

TEST(Linalg, ExpmOfPauliRotation) {
    const double t = 0.37;
    const CMatrix got = expm(cplx(0, -t) * pauli_x());
    const CMatrix expected = std::cos(t) * pauli_i() + cplx(0, -std::sin(t)) * pauli_x();
    EXPECT_LT(max_diff(got, expected), 1e-14);
}

TEST(Linalg, PsdOrderAndPinv) {
    const RMatrix a = RMatrix::diagonal({2, 1});
    const RMatrix b = RMatrix::diagonal({1, 1});
    EXPECT_TRUE(psd_ge(a, b));
    EXPECT_FALSE(psd_ge(b, a));
    const RMatrix s = RMatrix::diagonal({4, 0});
    const RMatrix p = pinv_sym(s);
    EXPECT_NEAR(p(0, 0), 0.25, 1e-15);
    EXPECT_EQ(p(1, 1), 0.0);
    EXPECT_EQ(numerical_rank(s), 1u);
    const RMatrix is = inv_sqrt_sym(RMatrix::diagonal({4, 9}));
    EXPECT_NEAR(is(0, 0), 0.5, 1e-14);
    EXPECT_NEAR(is(1, 1), 1.0 / 3.0, 1e-14);
}

TEST(Linalg, PinvIsMoorePenrose) {
    Rng rng(5);
    const RMatrix s = random_spd(4, rng);
    const RMatrix p = pinv_sym(s);
    EXPECT_LT(max_diff(s * p * s, s), 1e-10);
    EXPECT_LT(max_diff(p * s, RMatrix::identity(4)), 1e-10);
}

// Known-answer vectors of Philox4x64-10.
TEST(Rng, PhiloxKnownAnswers) {
    const auto zero = philox4x64({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(zero[0], 0x16554d9eca36314cULL);
    EXPECT_EQ(zero[1], 0xdb20fe9d672d0fdcULL);
    EXPECT_EQ(zero[2], 0xd7e772cee186176bULL);
    EXPECT_EQ(zero[3], 0x7e68b68aec7ba23bULL);
    const auto ones = philox4x64({~0ULL, ~0ULL, ~0ULL, ~0ULL}, {~0ULL, ~0ULL});
    EXPECT_EQ(ones[0], 0x87b092c3013fe90bULL);
    EXPECT_EQ(ones[1], 0x438c3c67be8d0224ULL);
    EXPECT_EQ(ones[2], 0x9cc7d7c69cd777b6ULL);
    EXPECT_EQ(ones[3], 0xa09caebf594f0ba0ULL);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a(42, 1, 2, 3), b(42, 1, 2, 3), c(42, 1, 2, 4), d(43, 1, 2, 3);
    std::set<uint64_t> firsts;
    for (int k = 0; k < 100; k++) {
        const uint64_t x = a();
        EXPECT_EQ(x, b());
        firsts.insert(x);
        firsts.insert(c());
        firsts.insert(d());
    }
    EXPECT_EQ(firsts.size(), 300u);
}

TEST(Rng, UniformAndNormalMoments) {
    Rng rng(2024);
    const int n = 200000;
    double s1 = 0, s2 = 0, g1 = 0, g2 = 0;
    for (int k = 0; k < n; k++) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s1 += u;
        s2 += u * u;
        const double g = rng.normal();
        g1 += g;
        g2 += g * g;
    }
    // 5 sigma bands around the exact moments.
    EXPECT_NEAR(s1 / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(s2 / n, 1.0 / 3, 5 * std::sqrt(4.0 / 45 / n));
    EXPECT_NEAR(g1 / n, 0.0, 5 / std::sqrt(double(n)));
    EXPECT_NEAR(g2 / n, 1.0, 5 * std::sqrt(2.0 / n));
}

TEST(Rng, BelowCoversRangeUniformly) {
    Rng rng(3);
    std::vector<int> counts(7);
    const int n = 70000;
    for (int k = 0; k < n; k++) {
        const auto v = rng.below(7);
        ASSERT_LT(v, 7u);
        counts[v]++;
    }
    for (int c : counts) {
        EXPECT_NEAR(c, n / 7.0, 5 * std::sqrt(n * (1.0 / 7) * (6.0 / 7)));
    }
}

TEST(Random, StatesAndDensities) {
    Rng rng(9);
    const CVector psi = random_state(8, rng);
    EXPECT_NEAR(norm(psi), 1.0, 1e-14);
    for (std::size_t r : {1u, 2u, 4u}) {
        const CMatrix rho = random_density(4, r, rng);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-13);
        const HermEig e = eigh(rho);
        EXPECT_GT(e.eigenvalues.front(), -1e-13);
        std::size_t rank = 0;
        for (double l : e.eigenvalues) {
            rank += l > 1e-10 ? 1 : 0;
        }
        EXPECT_EQ(rank, r);
    }
}

// Haar unitaries: E|U_00|^2 = 1/d and E|U_00|^4 = 2/(d(d+1)).
TEST(Random, HaarUnitaryMoments) {
    Rng rng(31);
    const std::size_t d = 3;
    const int n = 20000;
    double m2 = 0, m4 = 0;
    for (int k = 0; k < n; k++) {
        const double a = std::norm(random_unitary(d, rng)(0, 0));
        m2 += a;
        m4 += a * a;
    }
    const double var2 = 2.0 / (d * (d + 1.0)) - 1.0 / (d * d);
    EXPECT_NEAR(m2 / n, 1.0 / d, 5 * std::sqrt(var2 / n));
    // E a^3 = 6 / (d(d+1)(d+2)) bounds the variance of a^2 from above.
    EXPECT_NEAR(m4 / n, 2.0 / (d * (d + 1.0)), 5 * std::sqrt(6.0 / (d * (d + 1.0) * (d + 2.0)) / n));
}

}  // namespace
}  // namespace rmetro
