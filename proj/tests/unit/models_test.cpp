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

#include "rmetro/fisher/fisher.hpp"
#include "rmetro/models/hamiltonian.hpp"
#include "rmetro/models/pauli.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/states/registry.hpp"
#include "test_support.hpp"

namespace rmetro {
namespace {

using testing::max_diff;
using testing::scaled_identity;

TEST(PauliLabel, ParseAndDense) {
    const PauliLabel p = PauliLabel::parse("XZ");
    EXPECT_EQ(p.n, 2u);
    EXPECT_EQ(p.to_string(), "XZ");
    EXPECT_LT(max_diff(pauli_matrix(p), kron(testing::pauli_x(), testing::pauli_z())), 1e-15);
    EXPECT_LT(max_diff(pauli_matrix(PauliLabel::parse("Y")), testing::pauli_y()), 1e-15);
    EXPECT_EQ(PauliLabel::parse("YIY").y_count(), 2u);
    EXPECT_EQ(pauli_count(2), 16u);
    EXPECT_TRUE(PauliLabel::parse("II").is_identity());
}

TEST(PauliLabel, ProductPhases) {
    const auto xy = pauli_mul(PauliLabel::parse("X"), PauliLabel::parse("Y"));
    EXPECT_EQ(xy.label.to_string(), "Z");
    EXPECT_LT(std::abs(xy.phase - cplx(0, 1)), 1e-15);
    const auto yx = pauli_mul(PauliLabel::parse("Y"), PauliLabel::parse("X"));
    EXPECT_LT(std::abs(yx.phase - cplx(0, -1)), 1e-15);
    EXPECT_FALSE(commutes(PauliLabel::parse("X"), PauliLabel::parse("Z")));
    EXPECT_TRUE(commutes(PauliLabel::parse("XX"), PauliLabel::parse("ZZ")));
    // Dense products agree for every pair of two-qubit Paulis.
    for (uint64_t a = 0; a < 16; a++) {
        for (uint64_t b = 0; b < 16; b++) {
            const PauliLabel pa{2, a}, pb{2, b};
            const auto prod = pauli_mul(pa, pb);
            EXPECT_LT(max_diff(pauli_matrix(pa) * pauli_matrix(pb), prod.phase * pauli_matrix(prod.label)), 1e-14);
        }
    }
}

TEST(PauliLabel, ApplyWithAncilla) {
    Rng rng(1);
    const CVector v = random_state(8, rng);
    const PauliLabel p = PauliLabel::parse("Y");
    const CMatrix dense = kron(pauli_matrix(p), CMatrix::identity(4));
    const CVector got = apply_pauli(p, v, 4);
    const CVector expected = dense * v;
    for (std::size_t k = 0; k < 8; k++) {
        EXPECT_LT(std::abs(got[k] - expected[k]), 1e-15);
    }
}

TEST(PauliChannel, DepolarizingClosedForm) {
    Rng rng(2);
    const CMatrix rho = random_density(2, 2, rng);
    const double q = 0.12;
    const PauliChannel ch = PauliChannel::depolarizing(1, q);
    EXPECT_NEAR(ch.total(), q, 1e-15);
    const CMatrix expected = (1 - 4 * q / 3) * rho + (2 * q / 3) * CMatrix::identity(2);
    EXPECT_LT(max_diff(apply_pauli_channel(rho, ch), expected), 1e-14);
}

TEST(PauliChannel, ValidatesRates) {
    EXPECT_THROW(PauliChannel(1, {0.5, 0.6, -0.1, 0.0}), DomainError);
    EXPECT_THROW(PauliChannel(1, {0.5, 0.5, 0.1, 0.0}), DomainError);
    EXPECT_THROW(PauliChannel(1, {1.0, 0.0}), DimensionError);
    const PauliChannel r = random_pauli_channel(2, 0.2, 7);
    EXPECT_GE(r.rate(0), 0.8 - 1e-15);
    const PauliChannel t = PauliChannel::from_text(1, "0.9 0.05 0.03 0.02");
    EXPECT_DOUBLE_EQ(t.rate(2), 0.03);
}

TEST(Hamiltonian, NoiselessMaximallyEntangledQfimIsFourIdentity) {
    for (std::size_t n : {1u, 2u}) {
        const std::size_t m = pauli_count(n) - 1;
        const CVector me = maximally_entangled_state(n);
        const HamiltonianOutput out = hamiltonian_output(me, n);
        EXPECT_EQ(out.drho.size(), m);
        EXPECT_LT(max_diff(qfim(out.rho, out.drho), scaled_identity(m, 4)), 1e-12);
        EXPECT_LT(max_diff(qfim_hamiltonian_pure(me, n), scaled_identity(m, 4)), 1e-12);
    }
}

TEST(Hamiltonian, StabilizerAverageQfim) {
    for (std::size_t n : {1u, 2u}) {
        const double d = std::pow(2.0, double(n));
        const std::size_t m = pauli_count(n) - 1;
        EXPECT_LT(max_diff(stabilizer_average_qfim(n), scaled_identity(m, 4 * d / (d + 1))), 1e-12);
    }
    EXPECT_NEAR(wmse_lower_bound_w(1), 0.75, 1e-15);
    EXPECT_NEAR(wmse_lower_bound_w(2), 15.0 / 4.0, 1e-15);
}

TEST(Hamiltonian, NoisyBellFormulaAgainstSpectralQfim) {
    for (std::size_t n : {1u, 2u}) {
        for (uint64_t seed = 1; seed <= 4; seed++) {
            const PauliChannel ch = random_pauli_channel(n, 0.2, seed);
            const HamiltonianOutput out = hamiltonian_output(maximally_entangled_state(n), n, &ch);
            EXPECT_LT(max_diff(qfim_noisy_bell(ch), qfim(out.rho, out.drho)), 1e-8) << "n=" << n;
        }
    }
}

TEST(Hamiltonian, NoisyDeviationObservablesAreUnbiased) {
    const PauliChannel ch = random_pauli_channel(1, 0.15, 3);
    const HamiltonianOutput out = hamiltonian_output(maximally_entangled_state(1), 1, &ch);
    std::vector<CMatrix> xs;
    for (uint64_t k = 1; k < 4; k++) {
        xs.push_back(deviation_me_noisy(ch, PauliLabel{1, k}));
    }
    const UnbiasednessGap gap = local_unbiasedness_gap(out.rho, out.drho, xs);
    EXPECT_LT(gap.trace_gap, 1e-12);
    EXPECT_LT(gap.derivative_gap, 1e-12);
}

TEST(Hamiltonian, FamilyDerivativesAwayFromZero) {
    const PauliChannel ch = PauliChannel::depolarizing(1, 0.05);
    HamiltonianFamily fam(1, maximally_entangled_state(1), ch);
    const RVector theta{0.1, -0.05, 0.2};
    const auto analytic = fam.derivs(theta);
    const auto numeric = fam.central_difference(theta, 1e-5);
    for (std::size_t i = 0; i < 3; i++) {
        EXPECT_LT(max_diff(analytic[i], numeric[i]), 1e-8);
    }
    const HamiltonianOutput at_zero = hamiltonian_output(maximally_entangled_state(1), 1, &ch);
    const auto d0 = fam.derivs({0, 0, 0});
    for (std::size_t i = 0; i < 3; i++) {
        EXPECT_LT(max_diff(d0[i], at_zero.drho[i]), 1e-12);
    }
}

TEST(Hamiltonian, ClosedFormConstants) {
    // ((1-2q)^2 - q) / (1-2q)^2
    EXPECT_NEAR(noisy_lowrank_c(0.1), (0.64 - 0.1) / 0.64, 1e-15);
    EXPECT_NEAR(noisy_lowrank_c(0.0), 1.0, 1e-15);
    const PauliChannel ch = PauliChannel::depolarizing(1, 0.09);
    EXPECT_NEAR(stabilizer_offsupport_rate(basis_vector(2, 0), ch), 0.06, 1e-15);
}

TEST(Hamiltonian, RegisteredFamily) {
    register_model_families();
    auto &reg = FamilyRegistry::instance();
    ASSERT_TRUE(reg.contains("hamiltonian"));
    const auto fam = reg.make({"hamiltonian", {{"n", "1"}, {"input", "me"}}});
    EXPECT_EQ(fam->dim(), 4u);
    EXPECT_EQ(fam->n_params(), 3u);
    EXPECT_EQ(parse_hamiltonian_input("stabilizer"), HamiltonianInput::Stabilizer);
}

}  // namespace
}  // namespace rmetro
