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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rmetro/designs/clifford.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/fisher/lowrank.hpp"
#include "rmetro/fisher/optimality.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"
#include "rmetro/models/hamiltonian.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/states/families.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kPureDomain = 0x7468317075;   // "th1pu"
constexpr uint64_t kUnitDomain = 0x746832756e;   // "th2un"
constexpr uint64_t kGenDomain = 0x7468336765;    // "th3ge"
constexpr uint64_t kWellDomain = 0x746834776c;   // "th4wl"
constexpr uint64_t kNoiseDomain = 0x74686e6f69;  // "thnoi"
constexpr double kRatioTol = 1e-9;

// Exact 3-design measurements: the enumerated Clifford groups for one and two
// qubits (merged onto distinct outcome states) and the stabilizer states for three.
struct Designs {
    RankOnePOVM d2_raw;
    RankOnePOVM d2;
    RankOnePOVM d4;
    RankOnePOVM d8;
    std::size_t group1 = 0;
    std::size_t group2 = 0;

    Designs()
        : d2_raw(clifford_povm(clifford_enumerate(1), "clifford1")),
          d2(d2_raw.merged()),
          d4(pauli_povm_1q()),
          d8(pauli_povm_1q()) {
        group1 = clifford_enumerate(1).size();
        const auto g2 = clifford_enumerate(2);
        group2 = g2.size();
        d4 = clifford_povm(g2, "clifford2").merged();
        d8 = stabilizer_povm(3);
    }
    const RankOnePOVM &for_dim(std::size_t d) const {
        switch (d) {
            case 2:
                return d2;
            case 4:
                return d4;
            case 8:
                return d8;
            default:
                throw ConfigError("theorems.dims", "design measurements exist for d in {2, 4, 8}");
        }
    }
};

uint64_t draw_seed(uint64_t seed, uint64_t domain, std::size_t d, std::size_t i) {
    Rng rng(seed, domain, d, i);
    return rng();
}

struct Certified {
    double mu = 0;
    double c = 0;
    double bound = 0;
    bool found = false;
};

// Largest guaranteed constant over the eigenvalue thresholds mu of rho,
// with c taken from the low-rank split at that threshold.
Certified best_certified_bound(const CMatrix &rho, const std::vector<CMatrix> &drho, bool unitary_encoding) {
    const std::size_t d = rho.rows();
    RVector lambda = eigh(rho).eigenvalues;
    Certified best;
    for (double mu : lambda) {
        if (mu < 1e-9) {
            continue;
        }
        const LowRankSplit split = lowrank_split(rho, drho, mu);
        if (!(split.c > 0)) {
            continue;
        }
        const double b =
            unitary_encoding ? lowrank_unitary_bound(d, mu, split.c) : lowrank_general_bound(d, mu, split.c);
        if (!best.found || b > best.bound) {
            best = {mu, split.c, b, true};
        }
    }
    return best;
}

double ratio(const RMatrix &i, const RMatrix &j) {
    return numerical_rank(j) == j.rows() ? near_optimality_ratio(i, j) : near_optimality_ratio_on_range(i, j);
}

std::string dim_label(std::size_t d, std::size_t draws) {
    return "d=" + std::to_string(d) + " draws=" + std::to_string(draws);
}

struct DrawResult {
    double c = 0;
    Certified cert;
};

// One row per dimension: the draw with the smallest margin c - bound.
void add_worst(ResultTable &table, const std::string &check, const std::string &formula, std::size_t d,
               const std::vector<DrawResult> &res) {
    std::size_t worst = 0;
    std::size_t certified = 0;
    bool ok = true;
    for (std::size_t k = 0; k < res.size(); k++) {
        if (!res[k].cert.found) {
            continue;
        }
        certified++;
        ok = ok && res[k].c >= res[k].cert.bound - kRatioTol;
        if (!res[worst].cert.found || res[k].c - res[k].cert.bound < res[worst].c - res[worst].cert.bound) {
            worst = k;
        }
    }
    const auto &w = res[worst];
    table.add(check, dim_label(d, res.size()) + " certified=" + std::to_string(certified), w.c,
              {formula, {double(d), w.cert.mu, w.cert.c}}, 0, ok && certified > 0);
}

}  // namespace

ResultTable run_theorem_sweep(const ExperimentConfig &cfg, const RunOptions &opt) {
    const uint64_t seed = cfg.seed();
    const auto dims = cfg.get_u64s("theorems.dims", {2, 4, 8});
    const std::size_t pure_draws = cfg.get_u64("theorems.pure_draws", 50);
    const std::size_t pure_draws_d8 = cfg.get_u64("theorems.pure_draws_d8", opt.quick ? 5 : 20);
    const std::size_t mixed_draws = cfg.get_u64("theorems.mixed_draws", opt.quick ? 10 : 30);
    const auto noise_q = cfg.get_doubles("theorems.noise_q", {0.01, 0.05, 0.1});
    const double kappa_max = cfg.get_double("theorems.kappa_max", 3.0);

    const Designs designs;
    ResultTable table;
    table.meta["theorems.clifford1_elements"] = std::to_string(designs.group1);
    table.meta["theorems.clifford2_elements"] = std::to_string(designs.group2);
    table.meta["theorems.design_outcomes"] = std::to_string(designs.d2.size()) + "," +
                                            std::to_string(designs.d4.size()) + "," + std::to_string(designs.d8.size());

    // Phase state under the 24-element Clifford measurement.
    {
        PhaseQubitFamily family;
        const RVector theta{0.4};
        const CMatrix rho = family.eval(theta);
        const auto drho = family.derivs(theta);
        const RMatrix i_raw = cfim(rho, drho, designs.d2_raw);
        const RMatrix j = qfim(rho, drho);
        const double c = near_optimality_ratio(i_raw, j);
        table.add("pure_phase_cfim", "d=2 outcomes=" + std::to_string(designs.d2_raw.size()), i_raw(0, 0),
                  {"constant", {2.0 / 3.0}}, 0, std::abs(i_raw(0, 0) - 2.0 / 3.0) <= 1e-10);
        table.add("pure_phase_ratio", "d=2", c, {"design_pure_bound", {2.0}}, 0, c >= design_pure_bound(2) - kRatioTol);
    }

    // Random pure families with 2(d-1) parameters, the full tangent space.
    for (uint64_t d : dims) {
        const std::size_t draws = d == 8 ? pure_draws_d8 : pure_draws;
        const std::size_t m = 2 * (d - 1);
        const RankOnePOVM &povm = designs.for_dim(d);
        std::vector<double> cs(draws);
        parallel_for(draws, opt.workers, [&](std::size_t k) {
            RandomPureFamily family(d, m, draw_seed(seed, kPureDomain, d, k));
            const RVector theta(m, 0.0);
            const CMatrix rho = family.eval(theta);
            const auto drho = family.derivs(theta);
            cs[k] = near_optimality_ratio(cfim(rho, drho, povm), qfim(rho, drho));
        });
        const double worst = *std::min_element(cs.begin(), cs.end());
        table.add("pure_random_min_ratio", dim_label(d, draws), worst, {"design_pure_bound", {double(d)}}, 0,
                  worst >= design_pure_bound(d) - kRatioTol);
    }

    // Merging coincident outcome states leaves the CFIM unchanged.
    {
        RandomPureFamily family(4, 6, draw_seed(seed, kPureDomain, 4, 0));
        const RVector theta(6, 0.0);
        const CMatrix rho = family.eval(theta);
        const auto drho = family.derivs(theta);
        const RMatrix merged = cfim(rho, drho, designs.d4);
        const RMatrix raw = cfim(rho, drho, clifford_povm(clifford_enumerate(2), "clifford2"));
        const double gap = (merged - raw).max_abs();
        table.add("pure_merged_vs_enumerated", "d=4 outcomes=" + std::to_string(designs.group2 * 4), gap,
                  {"constant", {0.0}}, 0, gap <= 1e-10);
    }

    // Unitary encoding of an approximately low-rank state: rho = U rho0 U^dag
    // with random generators, so every eigenvalue derivative vanishes.
    for (uint64_t d : dims) {
        const RankOnePOVM &povm = designs.for_dim(d);
        const std::size_t m = std::min<std::size_t>(4, d * d - d);
        std::vector<DrawResult> res(mixed_draws);
        parallel_for(mixed_draws, opt.workers, [&](std::size_t k) {
            Rng rng(seed, kUnitDomain, d, k);
            const std::size_t big = 1 + rng.below(std::max<std::size_t>(1, d / 2));
            RVector lambda(d);
            double total = 0;
            for (std::size_t a = 0; a < d; a++) {
                lambda[a] = a < big ? 0.3 + 0.7 * rng.uniform() : 0.03 * rng.uniform();
                total += lambda[a];
            }
            const CMatrix v = random_unitary(d, rng);
            CMatrix rho(d, d);
            for (std::size_t a = 0; a < d; a++) {
                rho += projector(v.column(a)) * (lambda[a] / total);
            }
            std::vector<CMatrix> drho;
            for (std::size_t i = 0; i < m; i++) {
                drho.push_back(commutator(random_hermitian(d, rng), rho) * cplx(0, -1));
            }
            res[k] = {ratio(cfim(rho, drho, povm), qfim(rho, drho)), best_certified_bound(rho, drho, true)};
        });
        add_worst(table, "lowrank_unitary_orbit", "lowrank_unitary_bound", d, res);
    }

    // Noisy Hamiltonian probes are unitary encodings too: a Pauli channel
    // commutes with conjugation by Paulis.
    for (double q : noise_q) {
        Rng rng(seed, kNoiseDomain, static_cast<uint64_t>(std::llround(q * 1e6)));
        const PauliChannel dep = PauliChannel::depolarizing(1, q);
        const PauliChannel rnd = random_pauli_channel(1, q, rng());
        for (const auto *ch : {&dep, &rnd}) {
            const std::string tag = ch == &dep ? "depolarizing" : "random";
            const std::string sweep = "n=1 q=" + std::to_string(q).substr(0, 4) + " " + tag;
            {
                const HamiltonianOutput out = hamiltonian_output(maximally_entangled_state(1), 1, ch);
                const double c = ratio(cfim(out.rho, out.drho, designs.d4), qfim(out.rho, out.drho));
                const Certified cert = best_certified_bound(out.rho, out.drho, true);
                table.add("lowrank_noisy_me", sweep, c, {"lowrank_unitary_bound", {4.0, cert.mu, cert.c}}, 0,
                          cert.found && c >= cert.bound - kRatioTol);
            }
            double worst_margin = std::numeric_limits<double>::infinity();
            DrawResult worst;
            bool ok = true;
            for (const CVector &psi : stabilizer_states(1)) {
                const HamiltonianOutput out = hamiltonian_output(psi, 1, ch);
                const double c = ratio(cfim(out.rho, out.drho, designs.d2), qfim(out.rho, out.drho));
                const Certified cert = best_certified_bound(out.rho, out.drho, true);
                ok = ok && cert.found && c >= cert.bound - kRatioTol;
                if (cert.found && c - cert.bound < worst_margin) {
                    worst_margin = c - cert.bound;
                    worst = {c, cert};
                }
            }
            table.add("lowrank_noisy_stabilizer", sweep, worst.c, {"lowrank_unitary_bound", {2.0, worst.cert.mu, worst.cert.c}},
                      0, ok);
        }
    }

    // General encodings: random approximately low-rank mixed states and
    // depolarized fidelity families.
    for (uint64_t d : dims) {
        const RankOnePOVM &povm = designs.for_dim(d);
        std::vector<DrawResult> mixed(mixed_draws), depol(mixed_draws);
        parallel_for(mixed_draws, opt.workers, [&](std::size_t k) {
            const uint64_t s = draw_seed(seed, kGenDomain, d, k);
            RandomMixedFamily family(d, d, 3, s, 0.05);
            const RVector theta(3, 0.0);
            const CMatrix rho = family.eval(theta);
            const auto drho = family.derivs(theta);
            mixed[k] = {ratio(cfim(rho, drho, povm), qfim(rho, drho)), best_certified_bound(rho, drho, false)};

            Rng rng(s, kGenDomain);
            DepolarizedFidelityFamily fid(random_state(d, rng));
            const RVector f{0.9 + 0.099 * rng.uniform()};
            const CMatrix rf = fid.eval(f);
            const auto df = fid.derivs(f);
            depol[k] = {ratio(cfim(rf, df, povm), qfim(rf, df)), best_certified_bound(rf, df, false)};
        });
        add_worst(table, "lowrank_general_random_mixed", "lowrank_general_bound", d, mixed);
        add_worst(table, "lowrank_general_depolarized_fidelity", "lowrank_general_bound", d, depol);
    }

    // Rank-r well-conditioned states with maximal parameter sets: the design
    // measurement keeps Tr(J I^{-1}) under the upper bound, and Cauchy-Schwarz
    // with the Gill-Massar bounds keeps it above m^2 / (individual bound).
    for (uint64_t d : dims) {
        if (d > 4) {
            continue;
        }
        const RankOnePOVM &povm = designs.for_dim(d);
        for (std::size_t r = 1; r <= d; r++) {
            for (FullParamCase which : {FullParamCase::All, FullParamCase::Support, FullParamCase::OffSupport}) {
                if ((which == FullParamCase::Support && r < 2) || (which == FullParamCase::OffSupport && r == d)) {
                    continue;
                }
                Rng rng(seed, kWellDomain, d, r * 3 + static_cast<std::size_t>(which));
                RVector lambda(r);
                double total = 0;
                for (auto &l : lambda) {
                    l = 1 + (kappa_max - 1) * rng.uniform();
                    total += l;
                }
                const auto [lo, hi] = std::minmax_element(lambda.begin(), lambda.end());
                const double kappa = *hi / *lo;
                const CMatrix v = random_unitary(d, rng);
                CMatrix rho(d, d);
                for (std::size_t a = 0; a < r; a++) {
                    rho += projector(v.column(a)) * (lambda[a] / total);
                }
                const auto drho = full_parameter_directions(v, r, which);
                const std::size_t m = drho.size();
                const RMatrix j = qfim(rho, drho);
                const RMatrix i = cfim(rho, drho, povm);
                double t = 0;
                const RMatrix iinv = pinv_sym(i);
                for (std::size_t a = 0; a < m; a++) {
                    for (std::size_t b = 0; b < m; b++) {
                        t += j(a, b) * iinv(b, a);
                    }
                }
                const char *name = which == FullParamCase::All       ? "full"
                                   : which == FullParamCase::Support ? "support"
                                                                     : "offsupport";
                const double gm_ref = which == FullParamCase::All       ? double(d) - 1
                                      : which == FullParamCase::Support ? double(r) - 1
                                                                        : double(d - r);
                std::ostringstream sweep;
                sweep << "d=" << d << " r=" << r << " case=" << name << " m=" << m;
                const FormulaRef upper{"well_conditioned_trace_bound", {double(d), double(r), kappa, double(m)}};
                const double lower = double(m) * double(m) / gm_ref;
                table.add("conditioned_trace_upper", sweep.str(), t, upper, 0,
                          numerical_rank(i) == m && t <= theory(upper) * (1 + 1e-9));
                table.add("conditioned_trace_lower", sweep.str(), t, {"constant", {lower}}, 0, t >= lower * (1 - 1e-9));
            }
        }
    }
    return table;
}

}  // namespace rmetro
