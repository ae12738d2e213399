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

#include <cmath>
#include <set>

#include "rmetro/designs/clifford.hpp"
#include "rmetro/designs/moments.hpp"
#include "rmetro/designs/povm.hpp"
#include "rmetro/designs/tableau.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/random.hpp"
#include "test_support.hpp"

namespace rmetro {
namespace {

using testing::max_diff;

double group_order_oracle(std::size_t n) {
    double order = std::pow(2.0, double(n * n + 2 * n));
    for (std::size_t k = 1; k <= n; k++) {
        order *= std::pow(4.0, double(k)) - 1;
    }
    return order;
}

double stabilizer_count_oracle(std::size_t n) {
    double count = std::pow(2.0, double(n));
    for (std::size_t k = 1; k <= n; k++) {
        count *= std::pow(2.0, double(k)) + 1;
    }
    return count;
}

TEST(Pauli, ProductsAndCommutation) {
    const PauliString x = PauliString::parse("+X");
    const PauliString y = PauliString::parse("+Y");
    const PauliString prod = pauli_product(x, y);
    EXPECT_EQ(prod.phase, 1);  // XY = iZ
    EXPECT_EQ(prod.x[0], 0);
    EXPECT_EQ(prod.z[0], 1);
    EXPECT_FALSE(paulis_commute(x, y));
    EXPECT_TRUE(paulis_commute(PauliString::parse("+XX"), PauliString::parse("+ZZ")));
    EXPECT_LT(max_diff(pauli_dense(PauliString::parse("+XZ")), kron(testing::pauli_x(), testing::pauli_z())), 1e-15);
    EXPECT_EQ(PauliString::parse("-iYZ").to_string(), "-iYZ");
}

TEST(Tableau, HadamardAndPhaseConjugation) {
    const Tableau h = Tableau::from_gates(1, {{GateKind::H, 0}});
    EXPECT_EQ(h.conjugate(PauliString::parse("+X")).to_string(), "+Z");
    EXPECT_EQ(h.conjugate(PauliString::parse("+Y")).to_string(), "-Y");
    const Tableau s = Tableau::from_gates(1, {{GateKind::S, 0}});
    EXPECT_EQ(s.conjugate(PauliString::parse("+X")).to_string(), "+Y");
    const Tableau cx = Tableau::from_gates(2, {{GateKind::CNOT, 0, 1}});
    EXPECT_EQ(cx.conjugate(PauliString::parse("+XI")).to_string(), "+XX");
    EXPECT_EQ(cx.conjugate(PauliString::parse("+IZ")).to_string(), "+ZZ");
}

TEST(Tableau, DenseRoutesAgreeOnRandomCliffords) {
    Rng rng(1234);
    for (std::size_t n : {1u, 2u, 3u}) {
        for (int k = 0; k < 20; k++) {
            const Tableau t = random_clifford_tableau(n, rng);
            EXPECT_TRUE(t.is_symplectic());
            const auto gates = synthesize(t);
            EXPECT_EQ(Tableau::from_gates(n, gates), t);
            const CMatrix u = dense_from_tableau(t);
            EXPECT_LT(phase_insensitive_distance(u, dense_from_gates(n, gates)), 1e-12);
            EXPECT_LT(max_diff(u * u.adjoint(), CMatrix::identity(u.rows())), 1e-12);
            const std::size_t x = rng.below(u.rows());
            const CVector col = tableau_column(t, x);
            for (std::size_t r = 0; r < u.rows(); r++) {
                EXPECT_LT(std::abs(col[r] - u(r, x)), 1e-12);
            }
            // U P U^dagger from the tableau equals the dense conjugation.
            const PauliString p = PauliString::parse(n == 1 ? "+Y" : n == 2 ? "+XZ" : "+ZYX");
            EXPECT_LT(max_diff(pauli_dense(t.conjugate(p)), u * pauli_dense(p) * u.adjoint()), 1e-12);
        }
    }
}

TEST(Tableau, ComposeAndInverse) {
    Rng rng(99);
    const Tableau a = random_clifford_tableau(3, rng);
    const Tableau b = random_clifford_tableau(3, rng);
    EXPECT_EQ(a.compose(a.inverse()).key(), Tableau(3).key());
    const CMatrix ab = dense_from_tableau(a.compose(b));
    EXPECT_LT(phase_insensitive_distance(ab, dense_from_tableau(a) * dense_from_tableau(b)), 1e-12);
}

TEST(Clifford, GroupOrders) {
    EXPECT_EQ(clifford_group_order(1), 24u);
    EXPECT_EQ(clifford_group_order(2), 11520u);
    EXPECT_DOUBLE_EQ(double(clifford_group_order(2)), group_order_oracle(2));
    for (std::size_t n : {1u, 2u}) {
        const auto group = clifford_enumerate(n);
        EXPECT_EQ(group.size(), clifford_group_order(n));
        std::set<std::string> keys;
        for (const auto &g : group) {
            keys.insert(g.tableau.key());
        }
        EXPECT_EQ(keys.size(), group.size());
    }
}

TEST(Clifford, SamplerReachesEveryElement) {
    Rng rng(5);
    std::set<std::string> seen;
    for (int k = 0; k < 2000; k++) {
        seen.insert(random_clifford_tableau(1, rng).key());
    }
    EXPECT_EQ(seen.size(), 24u);
}

TEST(Stabilizer, StateCounts) {
    for (std::size_t n : {1u, 2u, 3u}) {
        EXPECT_DOUBLE_EQ(double(stabilizer_state_count(n)), stabilizer_count_oracle(n));
        EXPECT_EQ(stabilizer_states(n).size(), stabilizer_state_count(n));
    }
}

TEST(Moments, SymmetricProjector) {
    for (std::size_t d : {2u, 3u}) {
        for (int t : {1, 2, 3}) {
            const CMatrix p = symmetric_projector(d, t);
            EXPECT_NEAR(p.trace().real(), binomial(d + t - 1, t), 1e-12);
            EXPECT_LT(max_diff(p * p, p), 1e-12);
            EXPECT_NEAR(haar_moment(d, t).trace().real(), 1.0, 1e-12);
        }
    }
}

// Second Haar moment is (1 + SWAP) / (d(d+1)).
TEST(Moments, SecondMomentAgainstSwap) {
    const std::size_t d = 3;
    CMatrix swap(d * d, d * d);
    for (std::size_t a = 0; a < d; a++) {
        for (std::size_t b = 0; b < d; b++) {
            swap(a * d + b, b * d + a) = 1;
        }
    }
    const CMatrix expected = (1.0 / (d * (d + 1.0))) * (CMatrix::identity(d * d) + swap);
    EXPECT_LT(max_diff(haar_moment(d, 2), expected), 1e-14);
}

TEST(Moments, KnownDesigns) {
    EXPECT_LT(moment_t(pauli_povm_1q(), 3).frobenius_gap, 1e-12);
    EXPECT_LT(moment_t(clifford_povm(clifford_enumerate(1), "c1"), 3).frobenius_gap, 1e-10);
    EXPECT_LT(moment_t(stabilizer_povm(2), 3).frobenius_gap, 1e-10);
    const RankOnePOVM comp = computational_basis(4);
    EXPECT_LT(moment_t(comp, 1).frobenius_gap, 1e-14);
    EXPECT_GT(moment_t(comp, 2).frobenius_gap, 0.1);
}

TEST(Moments, DesignIdentities) {
    Rng rng(8);
    for (const RankOnePOVM &m : {pauli_povm_1q(), stabilizer_povm(2)}) {
        const std::size_t d = m.dim();
        const auto g = design_identity_check(m, random_hermitian(d, rng), random_hermitian(d, rng),
                                             random_hermitian(d, rng));
        EXPECT_LT(g.first, 1e-12);
        EXPECT_LT(g.second, 1e-12);
    }
    // Both identities need second moments, so a basis (a 1-design only) fails them.
    const std::size_t d = 4;
    const auto g = design_identity_check(computational_basis(d), random_hermitian(d, rng), random_hermitian(d, rng),
                                         random_hermitian(d, rng));
    EXPECT_GT(g.first, 1e-3);
    EXPECT_GT(g.second, 1e-3);
}

TEST(Moments, PairFrameStatistic) {
    for (std::size_t d : {2u, 4u}) {
        const CMatrix id = CMatrix::identity(d);
        for (int t : {1, 2, 3}) {
            EXPECT_NEAR(pair_frame_statistic(id, id, t), 1.0 / d, 1e-15);
        }
    }
}

TEST(Povm, RandomPovmIsComplete) {
    Rng rng(3);
    const RankOnePOVM m = random_rank_one_povm(3, 8, rng);
    EXPECT_EQ(m.size(), 8u);
    EXPECT_LT(m.completeness_error(), 1e-10);
    EXPECT_LT(max_diff(frame_operator(m), (1.0 / 3) * CMatrix::identity(3)), 1e-10);
    CMatrix sum(3, 3);
    for (std::size_t x = 0; x < m.size(); x++) {
        sum += m.element(x);
    }
    EXPECT_LT(max_diff(sum, CMatrix::identity(3)), 1e-10);
}

TEST(Povm, IncompleteEnsembleIsRejected) {
    EXPECT_THROW(RankOnePOVM({1.0}, {basis_vector(2, 0)}), DomainError);
    const RankOnePOVM loose({1.0}, {basis_vector(2, 0)}, -1);
    EXPECT_GT(loose.completeness_error(), 0.1);
}

TEST(Povm, TensorProductAndUnitaryEnsemble) {
    const RankOnePOVM p = tensor_product(pauli_povm_1q(), pauli_povm_1q());
    EXPECT_EQ(p.size(), 36u);
    EXPECT_EQ(p.dim(), 4u);
    EXPECT_LT(p.completeness_error(), 1e-12);
    const CMatrix h = CMatrix(2, 2, {1, 1, 1, -1}) * (1 / std::sqrt(2.0));
    const RankOnePOVM m = povm_from_unitary_ensemble({0.5, 0.5}, {CMatrix::identity(2), h});
    EXPECT_EQ(m.size(), 4u);
    EXPECT_LT(m.completeness_error(), 1e-12);
}

}  // namespace
}  // namespace rmetro
