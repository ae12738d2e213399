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
#include <sstream>

#include "rmetro/designs/clifford.hpp"
#include "rmetro/designs/povm.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/shadows/dataset_io.hpp"
#include "rmetro/shadows/estimators.hpp"
#include "rmetro/shadows/snapshot.hpp"
#include "rmetro/states/families.hpp"
#include "test_support.hpp"

namespace rmetro {
namespace {

using testing::max_diff;

// Outcome probabilities of a rank-one design on rho: d q_s <s|rho|s>.
RVector design_probs(const RankOnePOVM &m, const CMatrix &rho) {
    RVector p(m.size());
    for (std::size_t s = 0; s < m.size(); s++) {
        p[s] = m.dim() * m.weight(s) * expectation(rho, m.state(s)).real();
    }
    return p;
}

TEST(Snapshot, ExpansionSpectrum) {
    Rng rng(1);
    const CVector s = random_state(4, rng);
    const CMatrix e = expand_snapshot(s);
    EXPECT_NEAR(e.trace().real(), 1.0, 1e-13);
    const HermEig eig = eigh(e);
    EXPECT_NEAR(eig.eigenvalues.front(), -1.0, 1e-12);
    EXPECT_NEAR(eig.eigenvalues.back(), 4.0, 1e-12);
    const CVector phi = random_state(4, rng);
    EXPECT_NEAR(snapshot_overlap(s, phi), 5 * std::norm(inner(phi, s)) - 1, 1e-13);
    EXPECT_NEAR(snapshot_overlap(s, phi), expectation(e, phi).real(), 1e-12);
}

// Averaging snapshots over an exact 3-design reproduces rho.
TEST(Snapshot, ExactUnbiasednessOverDesign) {
    Rng rng(2);
    const RankOnePOVM m = stabilizer_povm(2);
    const CMatrix rho = random_density(4, 2, rng);
    const RVector p = design_probs(m, rho);
    CMatrix avg(4, 4);
    for (std::size_t s = 0; s < m.size(); s++) {
        avg += p[s] * expand_snapshot(m.state(s));
    }
    EXPECT_LT(max_diff(avg, rho), 1e-12);
}

TEST(Estimators, SingleShotVariancesOverDesign) {
    const RankOnePOVM m = stabilizer_povm(3);
    const std::size_t d = 8;
    GHZMixFamily fam(3);
    const CVector target = fam.ket({0.075, 0.075, 0.075});
    for (double phi : {0.10, 0.25}) {
        const CVector psi = fam.ket({phi, phi, phi});
        const CMatrix rho = projector(psi);
        const double f = std::norm(inner(target, psi));
        const RVector p = design_probs(m, rho);
        double v_std = 0;
        for (std::size_t s = 0; s < m.size(); s++) {
            const double o = snapshot_overlap(m.state(s), target) - f;
            v_std += p[s] * o * o;
        }
        EXPECT_NEAR(v_std, standard_fidelity_variance(d, f), 1e-10);
        EXPECT_NEAR(standard_fidelity_variance(d, f), 2 * (d + 1.0) * (1 + 2 * f) / (d + 2.0) - (1 + f) * (1 + f),
                    1e-14);

        // Local estimator with the orthogonal direction set from the true state.
        CVector perp = psi;
        const cplx c = inner(target, psi);
        for (std::size_t k = 0; k < d; k++) {
            perp[k] -= c * target[k];
        }
        perp = normalized(perp);
        const CMatrix x = fidelity_deviation_observable(target, perp, f);
        const double trx = x.trace().real();
        double mean = 0, v_loc = 0;
        for (std::size_t s = 0; s < m.size(); s++) {
            const double t = local_shadow_term(m.state(s), x, trx);
            mean += p[s] * t;
            v_loc += p[s] * t * t;
        }
        EXPECT_NEAR(mean, 0, 1e-12);
        EXPECT_NEAR(v_loc, local_fidelity_variance(d, f), 1e-10);
        EXPECT_NEAR(local_fidelity_variance(d, f), 4 * (d + 1.0) * f * (1 - f) / (d + 2.0), 1e-14);
    }
}

TEST(Sampling, BornProbabilitiesAndSampler) {
    Rng rng(4);
    const CMatrix rho = random_density(4, 4, rng);
    const RVector p = born_probabilities(rho, CMatrix::identity(4));
    double total = 0;
    for (std::size_t x = 0; x < 4; x++) {
        EXPECT_NEAR(p[x], rho(x, x).real(), 1e-15);
        total += p[x];
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    const int n = 40000;
    std::vector<int> counts(4);
    for (int k = 0; k < n; k++) {
        counts[sample_index(p, rng)]++;
    }
    for (std::size_t x = 0; x < 4; x++) {
        EXPECT_NEAR(counts[x], n * p[x], 5 * std::sqrt(n * p[x] * (1 - p[x])));
    }
}

TEST(Dataset, DeterministicAndSeedSensitive) {
    Rng rng(5);
    const CMatrix rho = random_density(4, 1, rng);
    const ShadowDataset a = simulate_dataset(rho, 2, 500, 77);
    const ShadowDataset b = simulate_dataset(rho, 2, 500, 77);
    const ShadowDataset c = simulate_dataset(rho, 2, 500, 78);
    EXPECT_EQ(a.snapshots, b.snapshots);
    EXPECT_EQ(a.unitaries, b.unitaries);
    EXPECT_NE(a.snapshots, c.snapshots);
    EXPECT_THROW(simulate_dataset(rho, 3, 10, 1), DimensionError);
    EXPECT_THROW(simulate_dataset(rho, 2, 10, 1, "bogus"), DomainError);
}

TEST(Dataset, JsonLinesRoundTrip) {
    Rng rng(6);
    const ShadowDataset ds = simulate_dataset(random_density(8, 2, rng), 3, 50, 9);
    std::stringstream buf;
    write_dataset(buf, ds);
    const ShadowDataset back = read_dataset(buf);
    EXPECT_EQ(back.qubits, ds.qubits);
    EXPECT_EQ(back.seed, ds.seed);
    EXPECT_EQ(back.snapshots, ds.snapshots);
    ASSERT_EQ(back.unitaries.size(), ds.unitaries.size());
    for (std::size_t i = 0; i < ds.size(); i++) {
        const CVector x = ds.state(i), y = back.state(i);
        EXPECT_NEAR(std::abs(inner(x, y)), 1.0, 1e-12);
    }
    const std::vector<Gate> gates = {{GateKind::H, 0}, {GateKind::S, 1}, {GateKind::CNOT, 0, 1}};
    EXPECT_EQ(gates_from_string(gates_to_string(gates)), gates);
}

// Empirical mean snapshot overlap within 5 sigma of the true fidelity.
TEST(Estimators, StandardOverlapIsUnbiased) {
    GHZMixFamily fam(3);
    const CVector target = fam.ket({0.075, 0.075, 0.075});
    const CMatrix rho = fam.eval({0.2, 0.2, 0.2});
    const double f = expectation(rho, target).real();
    const std::size_t n = 20000;
    const ShadowDataset ds = simulate_dataset(rho, 3, n, 31);
    const auto states = ds.states();
    const double est = standard_shadow_overlap(states, target);
    EXPECT_NEAR(est, f, 5 * std::sqrt(standard_fidelity_variance(8, f) / n));
}

TEST(Algorithm1, ConvergesNearTruth) {
    GHZMixFamily fam(3);
    const RVector target_phi{0.075, 0.075, 0.075};
    const CVector target = fam.ket(target_phi);
    for (double phi : {0.10, 0.20}) {
        const RVector state_phi{phi, phi, phi};
        const double f = ghz_fidelity(target_phi, state_phi);
        const std::size_t n = 5000;
        const ShadowDataset ds = simulate_dataset(fam.eval(state_phi), 3, n, 400 + std::size_t(phi * 100));
        const auto states = ds.states();
        const Algorithm1Result r = algorithm1_fidelity(states, target, fam);
        EXPECT_TRUE(r.converged);
        EXPECT_LE(r.iterations, 50u);
        EXPECT_EQ(r.trace.size(), r.iterations);
        EXPECT_NEAR(r.f_hat, f, 5 * std::sqrt(standard_fidelity_variance(8, f) / n));
        EXPECT_GT(r.f_hat, 0);
        EXPECT_LT(r.f_hat, 1);
    }
}

TEST(Algorithm1, RejectsEmptyInput) {
    GHZMixFamily fam(3);
    const std::vector<CVector> none;
    EXPECT_THROW(algorithm1_fidelity(none, fam.ket({0.1, 0.1, 0.1}), fam), DomainError);
}

}  // namespace
}  // namespace rmetro
