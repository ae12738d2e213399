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
#include <memory>

#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/states/families.hpp"
#include "rmetro/states/registry.hpp"
#include "test_support.hpp"

namespace rmetro {
namespace {

using testing::max_diff;

// Every family's analytic derivatives against its own central differences.
void expect_derivs_match(const ParamStateFamily &fam, const RVector &theta, double tol) {
    const auto analytic = fam.derivs(theta);
    const auto numeric = fam.central_difference(theta, 1e-5);
    ASSERT_EQ(analytic.size(), fam.n_params());
    for (std::size_t i = 0; i < analytic.size(); i++) {
        EXPECT_LT(max_diff(analytic[i], numeric[i]), tol) << fam.name() << " param " << i;
        EXPECT_LT(std::abs(analytic[i].trace()), 1e-12) << fam.name() << " param " << i;
    }
}

void expect_state(const CMatrix &rho) {
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_LT(hermiticity_gap(rho), 1e-13);
    EXPECT_GT(lambda_min(rho), -1e-12);
}

TEST(Families, PhaseQubitMatchesClosedForm) {
    PhaseQubitFamily fam;
    const double t = 0.7;
    const CMatrix rho = fam.eval({t});
    const cplx e = std::polar(1.0, t);
    const CMatrix expected(2, 2, {0.5, 0.5 * std::conj(e), 0.5 * e, 0.5});
    EXPECT_LT(max_diff(rho, expected), 1e-15);
    expect_derivs_match(fam, {t}, 1e-9);
}

TEST(Families, DerivativesMatchFiniteDifferences) {
    Rng rng(101);
    const CVector target = random_state(4, rng);
    FidelityPureFamily fp(target, 2);
    expect_derivs_match(fp, {0.6, 0.3, 1.1}, 1e-8);
    GHZMixFamily ghz(3);
    expect_derivs_match(ghz, {0.1, 0.15, 0.05}, 1e-8);
    DepolarizedFidelityFamily dep(target);
    expect_derivs_match(dep, {0.8}, 1e-9);
    StabilizerMixFamily stab(2);
    expect_derivs_match(stab, {0.1, -0.2, 0.3}, 1e-9);
    RandomPureFamily rp(4, 6, 7);
    expect_derivs_match(rp, RVector(6, 0.05), 1e-8);
    RandomMixedFamily rm(4, 2, rank_manifold_dimension(4, 2), 9);
    expect_derivs_match(rm, RVector(rm.n_params(), 0.0), 1e-8);
}

TEST(Families, StatesAreValidDensityMatrices) {
    GHZMixFamily ghz(3);
    expect_state(ghz.eval({0.2, 0.2, 0.2}));
    StabilizerMixFamily stab(1);
    expect_state(stab.eval({0.5}));
    DepolarizedFidelityFamily dep(basis_vector(4, 0));
    const CMatrix rho = dep.eval({0.7});
    expect_state(rho);
    EXPECT_NEAR(rho(0, 0).real(), 0.7, 1e-15);
    EXPECT_NEAR(rho(1, 1).real(), 0.1, 1e-15);
    RandomMixedFamily rm(4, 2, 3, 5, 0.1);
    const HermEig e = eigh(rm.eval({0, 0, 0}));
    EXPECT_LT(std::abs(e.eigenvalues[0]), 1e-12);
    EXPECT_LT(std::abs(e.eigenvalues[1]), 1e-12);
    EXPECT_GT(e.eigenvalues[2], 1e-3);
}

TEST(Families, DomainErrorsNameTheParameter) {
    GHZMixFamily ghz(3);
    try {
        ghz.eval({0.1, 1.2, 0.1});
        FAIL() << "expected DomainError";
    } catch (const DomainError &e) {
        EXPECT_NE(std::string(e.what()).find("phi[2]"), std::string::npos) << e.what();
    }
    EXPECT_THROW(ghz.eval({0.5, 0.4, 0.3}), DomainError);
    EXPECT_THROW(ghz.eval({0.1, 0.1}), DimensionError);
    DepolarizedFidelityFamily dep(basis_vector(2, 0));
    EXPECT_THROW(dep.eval({1.5}), DomainError);
    EXPECT_THROW(GHZMixFamily(1), DomainError);
}

// The GHZ-mix basis is orthonormal, so the fidelity of two mixtures is
// (sum_k sqrt(w_k w'_k))^2.
TEST(Families, GhzFidelityAgainstWeightOverlap) {
    const RVector a{0.075, 0.075, 0.075};
    for (double phi : {0.10, 0.15, 0.20, 0.25}) {
        const RVector b{phi, phi, phi};
        const RVector wa = GHZMixFamily::weights(a), wb = GHZMixFamily::weights(b);
        double s = 0;
        for (std::size_t k = 0; k < wa.size(); k++) {
            s += std::sqrt(wa[k] * wb[k]);
        }
        EXPECT_NEAR(ghz_fidelity(a, b), s * s, 1e-14);
        GHZMixFamily fam(3);
        EXPECT_NEAR(std::norm(inner(fam.ket(a), fam.ket(b))), s * s, 1e-14);
    }
}

// Infidelities of the four benchmark states against the phi = 0.075 target.
TEST(Families, BenchmarkInfidelities) {
    const RVector target{0.075, 0.075, 0.075};
    const double expected[] = {0.0073, 0.0570, 0.1459, 0.2759};
    const double phis[] = {0.10, 0.15, 0.20, 0.25};
    for (int k = 0; k < 4; k++) {
        const double inf = 1 - ghz_fidelity(target, RVector(3, phis[k]));
        EXPECT_NEAR(std::round(inf * 1e4) / 1e4, expected[k], 1e-12) << "phi=" << phis[k];
    }
}

TEST(Families, FidelityPureHitsRequestedFidelity) {
    Rng rng(3);
    const CVector target = random_state(4, rng);
    FidelityPureFamily fam(target, 2);
    for (double f : {0.1, 0.5, 0.99}) {
        const CVector psi = fam.ket({f, 0.4, -0.3});
        EXPECT_NEAR(norm(psi), 1.0, 1e-14);
        EXPECT_NEAR(std::norm(inner(target, psi)), f, 1e-14);
    }
    for (const CVector &c : fam.complement()) {
        EXPECT_LT(std::abs(inner(target, c)), 1e-14);
    }
}

TEST(FullParameterization, CountsAndIndependence) {
    Rng rng(17);
    const std::size_t d = 4;
    const CMatrix v = random_unitary(d, rng);
    for (std::size_t r = 1; r <= d; r++) {
        const auto all = full_parameter_directions(v, r, FullParamCase::All);
        const auto sup = full_parameter_directions(v, r, FullParamCase::Support);
        const auto off = full_parameter_directions(v, r, FullParamCase::OffSupport);
        EXPECT_EQ(all.size(), rank_manifold_dimension(d, r));
        EXPECT_EQ(all.size(), r * (2 * d - r) - 1);
        EXPECT_EQ(sup.size(), r * r - 1);
        EXPECT_EQ(off.size(), 2 * r * (d - r));
        RMatrix gram(all.size(), all.size());
        for (std::size_t i = 0; i < all.size(); i++) {
            EXPECT_LT(hermiticity_gap(all[i]), 1e-14);
            EXPECT_LT(std::abs(all[i].trace()), 1e-13);
            for (std::size_t j = 0; j < all.size(); j++) {
                gram(i, j) = trace_product(all[i], all[j]).real();
            }
        }
        if (!all.empty()) {
            EXPECT_EQ(numerical_rank(gram), all.size()) << "r=" << r;
        }
    }
}

TEST(Registry, BuildsKnownFamilies) {
    auto &reg = FamilyRegistry::instance();
    for (const char *name : {"phase_qubit", "fidelity_pure", "ghz_mix", "depolarized_fidelity", "stabilizer_mix",
                             "random_pure", "random_mixed"}) {
        EXPECT_TRUE(reg.contains(name)) << name;
    }
    const auto fam = reg.make({"random_mixed", {{"d", "3"}, {"rank", "2"}}});
    EXPECT_EQ(fam->dim(), 3u);
    EXPECT_EQ(fam->n_params(), rank_manifold_dimension(3, 2));
    EXPECT_THROW(reg.make({"no_such_family", {}}), DomainError);
}

TEST(Registry, TargetDescriptors) {
    const CVector ghz = parse_target_state("ghz", 8);
    EXPECT_NEAR(std::abs(ghz[0]), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(ghz[7]), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(parse_target_state("basis:2", 4), basis_vector(4, 2));
    EXPECT_THROW(parse_target_state("bogus", 4), DomainError);
    const RVector xs = parse_real_list("0.1, 0.2,0.3");
    ASSERT_EQ(xs.size(), 3u);
    EXPECT_DOUBLE_EQ(xs[1], 0.2);
}

}  // namespace
}  // namespace rmetro
