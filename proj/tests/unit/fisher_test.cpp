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

#include "rmetro/designs/clifford.hpp"
#include "rmetro/designs/povm.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/fisher/lowrank.hpp"
#include "rmetro/fisher/optimality.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/states/families.hpp"
#include "test_support.hpp"

namespace rmetro {
namespace {

using testing::max_diff;

CMatrix sqrtm_psd(const CMatrix &a) {
    return eigh(a).apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

// Uhlmann fidelity, used for the Bures finite-difference route to J_ii.
double fidelity(const CMatrix &rho, const CMatrix &sigma) {
    const CMatrix s = sqrtm_psd(rho);
    const double f = sqrtm_psd(s * sigma * s).trace().real();
    return f * f;
}

// CFIM summed directly from p_x = Tr(rho M_x).
RMatrix cfim_oracle(const CMatrix &rho, const std::vector<CMatrix> &drho, const RankOnePOVM &m) {
    const std::size_t k = drho.size();
    RMatrix out(k, k);
    for (std::size_t x = 0; x < m.size(); x++) {
        const CMatrix e = m.element(x);
        const double p = testing::naive_trace(testing::naive_mul(rho, e)).real();
        if (p < 1e-14) {
            continue;
        }
        RVector dp(k);
        for (std::size_t i = 0; i < k; i++) {
            dp[i] = testing::naive_trace(testing::naive_mul(drho[i], e)).real();
        }
        for (std::size_t i = 0; i < k; i++) {
            for (std::size_t j = 0; j < k; j++) {
                out(i, j) += dp[i] * dp[j] / p;
            }
        }
    }
    return out;
}

TEST(Qfim, PhaseQubitIsOne) {
    PhaseQubitFamily fam;
    const RMatrix j = qfim(fam.eval({0.3}), fam.derivs({0.3}));
    EXPECT_NEAR(j(0, 0), 1.0, 1e-12);
}

TEST(Qfim, PureStateFormula) {
    RandomPureFamily fam(4, 3, 21);
    const RVector theta{0.1, -0.2, 0.05};
    const CVector psi = fam.ket(theta);
    const auto dpsi = fam.ket_derivs(theta);
    const RMatrix j = qfim(fam.eval(theta), fam.derivs(theta));
    for (std::size_t a = 0; a < 3; a++) {
        for (std::size_t b = 0; b < 3; b++) {
            const double expected =
                4 * (inner(dpsi[a], dpsi[b]) - inner(dpsi[a], psi) * inner(psi, dpsi[b])).real();
            EXPECT_NEAR(j(a, b), expected, 1e-11);
        }
    }
}

TEST(Qfim, SpectralAndSldRoutesAgree) {
    for (std::size_t rank : {2u, 4u}) {
        RandomMixedFamily fam(4, rank, 4, 33 + rank);
        const RVector theta(4, 0.0);
        const CMatrix rho = fam.eval(theta);
        const auto drho = fam.derivs(theta);
        const SLDSet slds = sld_set(rho, drho);
        EXPECT_EQ(slds.support_rank, rank);
        EXPECT_LT(max_diff(qfim(rho, drho), qfim_from_sld(rho, slds.operators)), 1e-11);
        // The SLD solves d rho = (L rho + rho L) / 2.
        for (std::size_t i = 0; i < drho.size(); i++) {
            const CMatrix &l = slds.operators[i];
            EXPECT_LT(max_diff(0.5 * (l * rho + rho * l), drho[i]), 1e-11);
        }
    }
}

TEST(Qfim, BuresFiniteDifference) {
    RandomMixedFamily fam(3, 3, 2, 44);
    const RVector theta{0.0, 0.0};
    const CMatrix rho = fam.eval(theta);
    const RMatrix j = qfim(rho, fam.derivs(theta));
    const double h = 1e-3;
    for (std::size_t i = 0; i < 2; i++) {
        // Averaging the two one-sided steps cancels the O(h) term.
        double bures = 0;
        for (double sign : {1.0, -1.0}) {
            RVector tp = theta;
            tp[i] += sign * h;
            bures += 4 * (1 - std::sqrt(fidelity(rho, fam.eval(tp)))) / (h * h);
        }
        EXPECT_NEAR(bures, j(i, i), 1e-5 * j(i, i));
    }
}

TEST(Cfim, PhaseQubitUnderPauliIsTwoThirds) {
    PhaseQubitFamily fam;
    const RankOnePOVM pauli = pauli_povm_1q();
    const RankOnePOVM cliff = clifford_povm(clifford_enumerate(1), "clifford1");
    for (double t : {0.3, 1.1, 2.5}) {
        const CMatrix rho = fam.eval({t});
        const auto drho = fam.derivs({t});
        EXPECT_NEAR(cfim(rho, drho, pauli)(0, 0), 2.0 / 3.0, 1e-12);
        EXPECT_NEAR(cfim(rho, drho, cliff)(0, 0), 2.0 / 3.0, 1e-10);
    }
}

TEST(Cfim, MatchesDirectSumAndGeneralPovm) {
    Rng rng(8);
    RandomMixedFamily fam(3, 2, 3, 55);
    const RVector theta(3, 0.0);
    const CMatrix rho = fam.eval(theta);
    const auto drho = fam.derivs(theta);
    const RankOnePOVM m = random_rank_one_povm(3, 7, rng);
    const RMatrix i1 = cfim(rho, drho, m);
    EXPECT_LT(max_diff(i1, cfim_oracle(rho, drho, m)), 1e-12);
    EXPECT_LT(max_diff(i1, cfim(rho, drho, Povm::from_rank_one(m))), 1e-12);
}

// Merging coincident projectors leaves the information unchanged.
TEST(Cfim, InvariantUnderMerging) {
    RandomPureFamily fam(2, 2, 3);
    const CMatrix rho = fam.eval({0.1, 0.2});
    const auto drho = fam.derivs({0.1, 0.2});
    const RankOnePOVM raw = clifford_povm(clifford_enumerate(1), "clifford1");
    const RankOnePOVM merged = raw.merged();
    EXPECT_EQ(merged.size(), 6u);
    EXPECT_LT(max_diff(cfim(rho, drho, raw), cfim(rho, drho, merged)), 1e-12);
}

TEST(Bounds, QcrbAndGillMassarOnRandomPovms) {
    Rng rng(77);
    for (std::size_t d : {2u, 3u, 4u}) {
        for (int draw = 0; draw < 25; draw++) {
            RandomMixedFamily fam(d, d, d * d - 1, rng());
            const RVector theta(d * d - 1, 0.0);
            const CMatrix rho = fam.eval(theta);
            const auto drho = fam.derivs(theta);
            const RankOnePOVM m = random_rank_one_povm(d, d + rng.below(2 * d * d), rng);
            const RMatrix j = qfim(rho, drho);
            const RMatrix i = cfim(rho, drho, m);
            EXPECT_TRUE(psd_ge(j, i, 1e-8));
            const GillMassarResult gm = gill_massar(j, i, d);
            EXPECT_DOUBLE_EQ(gm.bound, double(d - 1));
            EXPECT_LE(gm.gm, d - 1 + 1e-9);
            EXPECT_TRUE(gm.ok);
        }
    }
}

TEST(Optimality, RatioOnDiagonalMatrices) {
    const RMatrix i = RMatrix::diagonal({1, 2});
    const RMatrix j = RMatrix::diagonal({2, 2});
    EXPECT_NEAR(near_optimality_ratio(i, j), 0.5, 1e-14);
    const RMatrix js = RMatrix::diagonal({2, 0});
    const RMatrix is = RMatrix::diagonal({1, 0});
    EXPECT_NEAR(near_optimality_ratio_on_range(is, js), 0.5, 1e-14);
    EXPECT_NEAR(wmse(RMatrix::identity(2), RMatrix::diagonal({0.25, 0.5})), 0.75, 1e-15);
}

TEST(Optimality, GuaranteedConstants) {
    // (d+2) / (4(d+1))
    EXPECT_NEAR(design_pure_bound(2), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(design_pure_bound(4), 0.3, 1e-15);
    EXPECT_NEAR(design_pure_bound(8), 10.0 / 36.0, 1e-15);
    for (std::size_t d : {2u, 4u, 8u}) {
        EXPECT_LE(lowrank_unitary_bound(d, 0.9, 0.5), design_pure_bound(d));
        EXPECT_LE(lowrank_general_bound(d, 0.9, 0.5), lowrank_unitary_bound(d, 0.9, 0.5) + 1e-15);
        // An exactly pure state (mu = c = 1) recovers the pure-state constant.
        EXPECT_NEAR(lowrank_unitary_bound(d, 1, 1), design_pure_bound(d), 1e-15);
    }
}

TEST(Deviation, PlainObservablesAreLocallyUnbiased) {
    RandomMixedFamily fam(4, 2, 5, 61);
    const RVector theta(5, 0.0);
    const CMatrix rho = fam.eval(theta);
    const auto drho = fam.derivs(theta);
    const DeviationObservables dev = deviation_observables(rho, drho, DeviationKind::Plain);
    const UnbiasednessGap gap = local_unbiasedness_gap(rho, drho, dev.X);
    EXPECT_LT(gap.trace_gap, 1e-10);
    EXPECT_LT(gap.derivative_gap, 1e-10);
    for (const CMatrix &x : dev.X) {
        EXPECT_LT(hermiticity_gap(x), 1e-12);
    }
}

// Closed form against summing over the 48 outcomes of the enumerated design.
TEST(Deviation, PredictedMsemMatchesEnumeration) {
    const RankOnePOVM design = clifford_povm(clifford_enumerate(1), "clifford1");
    Rng rng(90);
    for (int k = 0; k < 5; k++) {
        RandomMixedFamily fam(2, 2, 3, rng());
        const RVector theta(3, 0.0);
        const CMatrix rho = fam.eval(theta);
        const auto dev = deviation_observables(rho, fam.derivs(theta), DeviationKind::Plain);
        EXPECT_LT(max_diff(predicted_msem(rho, dev.X, 2), msem_by_enumeration(rho, dev.X, design)), 1e-9);
    }
}

TEST(OptimalEstimator, AttainsInverseFisher) {
    RandomPureFamily fam(3, 2, 12);
    const RVector theta{0.0, 0.0};
    Rng rng(4);
    const RankOnePOVM m = random_rank_one_povm(3, 9, rng);
    const OutcomeDistribution dist = outcome_distribution(fam.eval(theta), fam.derivs(theta), m);
    const OptimalEstimator est = optimal_estimator(dist);
    const std::size_t k = 2;
    RMatrix cov(k, k);
    for (std::size_t i = 0; i < k; i++) {
        double mean = 0;
        for (std::size_t y = 0; y < dist.p.size(); y++) {
            mean += dist.p[y] * est.alpha(i, y);
        }
        EXPECT_NEAR(mean, 0, 1e-12);
        for (std::size_t j = 0; j < k; j++) {
            double slope = 0, c = 0;
            for (std::size_t y = 0; y < dist.p.size(); y++) {
                slope += dist.dp[j][y] * est.alpha(i, y);
                c += dist.p[y] * est.alpha(i, y) * est.alpha(j, y);
            }
            EXPECT_NEAR(slope, i == j ? 1.0 : 0.0, 1e-10);
            cov(i, j) = c;
        }
    }
    EXPECT_LT(max_diff(cov, est.inverse_cfim), 1e-10);
}

TEST(LowRank, SplitBookkeeping) {
    RandomMixedFamily fam(4, 4, 4, 71, 0.05);
    const RVector theta(4, 0.0);
    const CMatrix rho = fam.eval(theta);
    const auto drho = fam.derivs(theta);
    const SupportSpectrum spec = support_spectrum(rho);
    const double mu = spec.lambda[spec.lambda.size() - 2];
    const LowRankSplit s = lowrank_split(rho, drho, mu);
    EXPECT_EQ(s.rank_pi, 2u);
    EXPECT_LT(max_diff(s.pi + s.pi_perp, CMatrix::identity(4)), 1e-12);
    EXPECT_NEAR(s.p, trace_product(rho, s.pi_perp).real(), 1e-14);
    const RMatrix rebuilt = s.j_tilde + s.p * s.j_perp + s.j_p;
    EXPECT_LT(max_diff(rebuilt, s.j), 1e-10);
    EXPECT_LE(s.c, 1.0 + 1e-12);
    EXPECT_TRUE(psd_ge(s.j_tilde, s.c * s.j, 1e-9));
    EXPECT_THROW(lowrank_split(rho, drho, 2.0), DomainError);
}

TEST(Conditioning, SupportConditionNumber) {
    const CMatrix rho = to_complex(RMatrix::diagonal({0.5, 0.25, 0.25, 0}));
    EXPECT_NEAR(support_condition_number(rho), 2.0, 1e-14);
}

}  // namespace
}  // namespace rmetro
