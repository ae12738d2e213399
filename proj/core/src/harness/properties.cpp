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

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "rmetro/designs/clifford.hpp"
#include "rmetro/designs/povm.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/fisher/optimality.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"
#include "rmetro/models/hamiltonian.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/shadows/estimators.hpp"
#include "rmetro/shadows/snapshot.hpp"
#include "rmetro/states/families.hpp"
#include "rmetro/states/registry.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kCorpusDomain = 0x636f727075;  // "corpu"
constexpr uint64_t kGmDomain = 0x676d737765;      // "gmswe"
constexpr uint64_t kEstDomain = 0x6573746976;     // "estiv"
constexpr uint64_t kSnapDomain = 0x736e617073;    // "snaps"
constexpr double kSigma = 5.0;

struct CorpusEntry {
    std::string name;
    std::shared_ptr<ParamStateFamily> family;
    std::vector<RVector> thetas;
    std::vector<RankOnePOVM> povms;
};

std::vector<CorpusEntry> build_corpus(uint64_t seed) {
    Rng rng(seed, kCorpusDomain);
    const RankOnePOVM pauli = pauli_povm_1q();
    const RankOnePOVM pauli2 = tensor_product(pauli, pauli);
    const RankOnePOVM stab2 = stabilizer_povm(2);
    const RankOnePOVM clifford1 = clifford_povm(clifford_enumerate(1), "clifford1").merged();

    std::vector<CorpusEntry> c;
    c.push_back({"phase_qubit", std::make_shared<PhaseQubitFamily>(), {{0.0}, {0.7}},
                 {pauli, computational_basis(2), clifford1, random_rank_one_povm(2, 5, rng)}});
    c.push_back({"fidelity_pure", std::make_shared<FidelityPureFamily>(random_state(4, rng)),
                 {{0.8, 0.3, 0.4}, {0.95, 1.1, 2.0}},
                 {stab2, pauli2, random_rank_one_povm(4, 12, rng)}});
    c.push_back({"ghz_mix", std::make_shared<GHZMixFamily>(3), {{0.1, 0.1, 0.1}, {0.05, 0.2, 0.1}},
                 {stabilizer_povm(3), random_rank_one_povm(8, 30, rng)}});
    c.push_back({"depolarized_fidelity_d2",
                 std::make_shared<DepolarizedFidelityFamily>(parse_target_state("bloch_symmetric", 2)),
                 {{0.9}, {0.999}},
                 {pauli, clifford1, random_rank_one_povm(2, 7, rng)}});
    c.push_back({"depolarized_fidelity_d4", std::make_shared<DepolarizedFidelityFamily>(random_state(4, rng)),
                 {{0.7}, {0.99}},
                 {stab2, pauli2}});
    c.push_back({"stabilizer_mix", std::make_shared<StabilizerMixFamily>(2), {{0.1, 0.2, -0.1}, {0.0, 0.0, 0.0}},
                 {pauli2, stab2, computational_basis(4)}});
    c.push_back({"random_pure", std::make_shared<RandomPureFamily>(4, 3, seed), {{0, 0, 0}, {0.1, -0.2, 0.3}},
                 {stab2, random_rank_one_povm(4, 9, rng)}});
    c.push_back({"random_mixed_rank2", std::make_shared<RandomMixedFamily>(4, 2, 3, seed), {{0, 0, 0}},
                 {stab2, pauli2}});
    c.push_back({"random_mixed_full", std::make_shared<RandomMixedFamily>(4, 4, 5, seed + 1, 0.5),
                 {{0, 0, 0, 0, 0}, {0.05, 0, -0.05, 0.1, 0}},
                 {stab2, random_rank_one_povm(4, 16, rng)}});
    c.push_back({"hamiltonian_me_noisy",
                 std::make_shared<HamiltonianFamily>(1, maximally_entangled_state(1), PauliChannel::depolarizing(1, 0.05)),
                 {{0, 0, 0}, {0.1, -0.05, 0.2}},
                 {stab2}});
    return c;
}

struct GmDraw {
    std::size_t r = 0;
    double full = 0;
    double support = std::numeric_limits<double>::quiet_NaN();
    double offdiag = std::numeric_limits<double>::quiet_NaN();
};

GmDraw gm_draw(std::size_t d, std::size_t index, uint64_t seed) {
    Rng rng(seed, kGmDomain, d, index);
    GmDraw out;
    out.r = 1 + rng.below(d);
    RVector lambda(out.r);
    double total = 0;
    for (auto &l : lambda) {
        l = 0.05 + rng.uniform();
        total += l;
    }
    const CMatrix v = random_unitary(d, rng);
    CMatrix rho(d, d);
    for (std::size_t k = 0; k < out.r; k++) {
        rho += projector(v.column(k)) * (lambda[k] / total);
    }
    const std::size_t outcomes = d + rng.below(2 * d * d);
    const RankOnePOVM m = random_rank_one_povm(d, outcomes, rng);

    auto gm = [&](const std::vector<CMatrix> &drho) {
        const RMatrix j = qfim(rho, drho);
        const RMatrix i = cfim(rho, drho, m);
        return gill_massar(j, i, d).gm;
    };
    out.full = gm(full_parameter_directions(v, out.r, FullParamCase::All));
    if (out.r >= 2) {
        out.support = gm(full_parameter_directions(v, out.r, FullParamCase::Support));
    }
    if (out.r < d) {
        out.offdiag = gm(full_parameter_directions(v, out.r, FullParamCase::OffSupport));
    }
    return out;
}

std::vector<GmDraw> gm_sweep(std::size_t d, std::size_t draws, uint64_t seed, std::size_t workers) {
    std::vector<GmDraw> out(draws);
    parallel_for(draws, workers, [&](std::size_t i) { out[i] = gm_draw(d, i, seed); });
    return out;
}

}  // namespace

ResultTable run_property_suite(const ExperimentConfig &cfg, const RunOptions &opt) {
    const uint64_t seed = cfg.seed();
    ResultTable table;

    // Quantum Cramer-Rao ordering J >= I on the corpus.
    std::size_t triples = 0;
    for (const auto &entry : build_corpus(seed)) {
        double worst = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (const auto &theta : entry.thetas) {
            const CMatrix rho = entry.family->eval(theta);
            const auto drho = entry.family->derivs(theta);
            const RMatrix j = qfim(rho, drho);
            for (const auto &m : entry.povms) {
                const RMatrix i = cfim(rho, drho, m);
                worst = std::min(worst, lambda_min(symmetrized(j - i)));
                ok = ok && psd_ge(j, i, 1e-8);
                triples++;
            }
        }
        table.add("qcrb_psd", entry.name, worst, {"constant", {0.0}}, 0, ok);
    }
    table.meta["properties.corpus_triples"] = std::to_string(triples);

    // Gill-Massar bounds over random rank-one POVMs. The maximal
    // parameterizations attain the bounds, so the largest value per dimension
    // should sit on the bound.
    const std::size_t draws = cfg.get_u64(opt.quick ? "properties.gm_draws_quick" : "properties.gm_draws",
                                          opt.quick ? 120 : 400);
    std::size_t total_draws = 0;
    for (std::size_t d : {2, 3, 4}) {
        const auto res = gm_sweep(d, draws, seed, opt.workers);
        total_draws += res.size();
        double full_max = 0, support_max = -1, off_max = -1;
        std::size_t support_n = 0, off_n = 0;
        bool full_ok = true, support_ok = true, off_ok = true;
        for (const auto &g : res) {
            const double slack = 1e-9 * static_cast<double>(d);
            full_max = std::max(full_max, g.full);
            full_ok = full_ok && g.full <= static_cast<double>(d) - 1 + slack;
            if (!std::isnan(g.support)) {
                support_n++;
                support_max = std::max(support_max, g.support - (static_cast<double>(g.r) - 1));
                support_ok = support_ok && g.support <= static_cast<double>(g.r) - 1 + slack;
            }
            if (!std::isnan(g.offdiag)) {
                off_n++;
                off_max = std::max(off_max, g.offdiag - static_cast<double>(d - g.r));
                off_ok = off_ok && g.offdiag <= static_cast<double>(d - g.r) + slack;
            }
        }
        const std::string sweep = "d=" + std::to_string(d) + " draws=" + std::to_string(res.size());
        table.add("gm_full", sweep, full_max, {"gm_full_bound", {double(d)}}, 0, full_ok);
        table.add("gm_support_excess", sweep + " rank>=2:" + std::to_string(support_n), support_max,
                  {"constant", {0.0}}, 0, support_ok);
        table.add("gm_offdiag_excess", sweep + " rank<d:" + std::to_string(off_n), off_max, {"constant", {0.0}}, 0,
                  off_ok);
    }
    table.meta["properties.gm_povms"] = std::to_string(total_draws);

    // Snapshot unbiasedness: the mean expanded snapshot of a rank-2 two-qubit
    // state matches it elementwise.
    {
        const std::size_t shots = cfg.get_u64(opt.quick ? "properties.snapshot_shots_quick" : "properties.snapshot_shots",
                                              opt.quick ? 20000 : 100000);
        Rng rng(seed, kSnapDomain);
        const CMatrix rho = random_density(4, 2, rng);
        const ShadowDataset ds = simulate_dataset(rho, 2, shots, seed);
        const std::size_t d = 4;
        double worst = 0;
        for (std::size_t r = 0; r < d; r++) {
            for (std::size_t c = r; c < d; c++) {
                std::vector<double> re(shots), im(shots);
                for (std::size_t i = 0; i < shots; i++) {
                    const CVector s = ds.state(i);
                    const cplx v = 5.0 * s[r] * std::conj(s[c]) - (r == c ? 1.0 : 0.0);
                    re[i] = v.real();
                    im[i] = v.imag();
                }
                const SampleStats sr = sample_stats(re);
                worst = std::max(worst, std::abs(z_score(sr.mean, rho(r, c).real(), sr.stderr_)));
                if (r != c) {
                    const SampleStats si = sample_stats(im);
                    worst = std::max(worst, std::abs(z_score(si.mean, rho(r, c).imag(), si.stderr_)));
                }
            }
        }
        table.add("snapshot_unbiased_max_z", "d=4 shots=" + std::to_string(shots), worst, {"constant", {kSigma}}, 0,
                  worst <= kSigma);
    }

    // The optimal locally unbiased estimator for a fixed POVM has covariance I^{-1}.
    {
        const std::size_t shots = cfg.get_u64(opt.quick ? "properties.estimator_shots_quick" : "properties.estimator_shots",
                                              opt.quick ? 50000 : 200000);
        RandomPureFamily family(4, 2, seed);
        const RVector theta0{0.0, 0.0};
        const auto dist = outcome_distribution(family.eval(theta0), family.derivs(theta0), stabilizer_povm(2));
        const OptimalEstimator est = optimal_estimator(dist);
        const std::size_t m = 2;
        std::vector<std::vector<double>> products(3, std::vector<double>(shots));
        std::vector<std::vector<double>> means(m, std::vector<double>(shots));
        Rng rng(seed, kEstDomain);
        for (std::size_t s = 0; s < shots; s++) {
            const std::size_t y = sample_index(est.p, rng);
            const double a0 = est.alpha(0, y), a1 = est.alpha(1, y);
            means[0][s] = a0;
            means[1][s] = a1;
            products[0][s] = a0 * a0;
            products[1][s] = a0 * a1;
            products[2][s] = a1 * a1;
        }
        const std::size_t idx[3][2] = {{0, 0}, {0, 1}, {1, 1}};
        double worst = 0;
        for (std::size_t k = 0; k < 3; k++) {
            const SampleStats st = sample_stats(products[k]);
            worst = std::max(worst, std::abs(z_score(st.mean, est.inverse_cfim(idx[k][0], idx[k][1]), st.stderr_)));
        }
        for (std::size_t k = 0; k < m; k++) {
            const SampleStats st = sample_stats(means[k]);
            worst = std::max(worst, std::abs(z_score(st.mean, 0.0, st.stderr_)));
        }
        table.add("optimal_estimator_max_z", "random_pure d=4 m=2 shots=" + std::to_string(shots), worst,
                  {"constant", {kSigma}}, 0, worst <= kSigma);
    }

    // Local shadow estimator for the fidelity: mean f and single-shot MSE V_ff.
    {
        const std::size_t shots = cfg.get_u64(opt.quick ? "properties.local_shots_quick" : "properties.local_shots",
                                              opt.quick ? 20000 : 100000);
        Rng rng(seed, kSnapDomain, 1);
        FidelityPureFamily family(random_state(4, rng), 2);
        const double f = 0.8;
        const RVector theta{f, 0.3, 0.9};
        const CVector psi = family.ket(theta);
        const CMatrix x = fidelity_deviation_observable(family.target(), family.perp({0.3, 0.9}), f);
        const double tx = x.trace().real();
        const ShadowDataset ds = simulate_dataset(projector(psi), 2, shots, seed + 1);
        std::vector<double> est(shots), sq(shots);
        for (std::size_t i = 0; i < shots; i++) {
            est[i] = f + local_shadow_term(ds.state(i), x, tx);
            sq[i] = (est[i] - f) * (est[i] - f);
        }
        const SampleStats se = sample_stats(est);
        const SampleStats sv = sample_stats(sq);
        const double zm = z_score(se.mean, f, se.stderr_);
        const FormulaRef vff{"local_fidelity_variance", {4.0, f}};
        const double zv = z_score(sv.mean, theory(vff), sv.stderr_);
        table.add("local_fidelity_mean", "d=4 f=0.8", se.mean, {"constant", {f}}, se.stderr_, std::abs(zm) <= kSigma);
        table.add("local_fidelity_variance", "d=4 f=0.8", sv.mean, vff, sv.stderr_, std::abs(zv) <= kSigma);
    }

    // Worker-count independence of a parallel sweep.
    {
        const auto a = gm_sweep(3, 64, seed, 1);
        const auto b = gm_sweep(3, 64, seed, std::max<std::size_t>(4, opt.workers));
        bool same = true;
        for (std::size_t i = 0; i < a.size(); i++) {
            same = same && a[i].full == b[i].full && a[i].r == b[i].r;
        }
        table.add("determinism_workers", "gm sweep d=3", same ? 1.0 : 0.0, {"constant", {1.0}}, 0, same);
    }

    // Config round trip.
    {
        const ExperimentConfig parsed = ExperimentConfig::parse(cfg.serialize());
        const bool same = parsed == cfg && parsed.hash() == cfg.hash() && parsed.serialize() == cfg.serialize();
        table.add("config_round_trip", cfg.id(), same ? 1.0 : 0.0, {"constant", {1.0}}, 0, same);
    }
    return table;
}

}  // namespace rmetro
