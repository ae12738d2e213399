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
#include <map>
#include <sstream>

#include "rmetro/designs/clifford.hpp"
#include "rmetro/designs/moments.hpp"
#include "rmetro/designs/tableau.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"
#include "rmetro/qmath/random.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kIdentDomain = 0x6465736964;  // "desid"
constexpr uint64_t kFrameDomain = 0x6465736672;  // "desfr"
constexpr uint64_t kChiDomain = 0x6465736368;    // "desch"
constexpr uint64_t kMsemDomain = 0x6465736d73;   // "desms"
constexpr double kSigma = 5.0;

RankOnePOVM make_ensemble(const std::string &name) {
    if (name == "pauli1q") {
        return pauli_povm_1q();
    }
    if (name == "clifford1") {
        return clifford_povm(clifford_enumerate(1), "clifford1");
    }
    if (name == "clifford2") {
        return clifford_povm(clifford_enumerate(2), "clifford2");
    }
    if (name.rfind("stabilizer", 0) == 0) {
        const std::string digits = name.substr(10);
        if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '3') {
            return stabilizer_povm(static_cast<std::size_t>(digits[0] - '0'));
        }
    }
    throw ConfigError("designs.ensemble", "unknown ensemble '" + name + "'");
}

double moment_tolerance(const std::string &name) {
    return name == "pauli1q" ? 1e-12 : 1e-10;
}

CMatrix unit_hermitian(std::size_t d, Rng &rng) {
    CMatrix h = random_hermitian(d, rng);
    return h * (1.0 / h.frobenius_norm());
}

void add_moment_rows(ResultTable &table, const std::string &name, const RankOnePOVM &m, int t) {
    const MomentCheck mc = moment_t(m, t);
    const std::string sweep = name + " t=" + std::to_string(t) + " elements=" + std::to_string(m.size());
    table.add("design_moment_gap", sweep, mc.frobenius_gap, {"constant", {moment_tolerance(name)}}, 0,
              mc.frobenius_gap <= moment_tolerance(name));
}

void add_identity_rows(ResultTable &table, const std::string &name, const RankOnePOVM &m, uint64_t seed) {
    Rng rng(seed, kIdentDomain, m.dim(), m.size());
    double worst = 0;
    for (int rep = 0; rep < 5; rep++) {
        const CMatrix a = unit_hermitian(m.dim(), rng);
        const CMatrix b = unit_hermitian(m.dim(), rng);
        const CMatrix c = unit_hermitian(m.dim(), rng);
        const DesignIdentityGaps g = design_identity_check(m, a, b, c);
        worst = std::max({worst, g.first, g.second});
    }
    table.add("design_identity_gap", name + " draws=5", worst, {"constant", {1e-12}}, 0, worst <= 1e-12);
}

// Pair frame statistic of sampled n-qubit Cliffords against the t-design value.
void add_sampled_frame_rows(ResultTable &table, std::size_t n, std::size_t draws, int t_max, uint64_t seed,
                            std::size_t workers) {
    const std::size_t pairs = draws / 2;
    std::vector<std::vector<double>> stats(static_cast<std::size_t>(t_max), std::vector<double>(pairs));
    parallel_for(pairs, workers, [&](std::size_t k) {
        Rng ra(seed, kFrameDomain, n, 2 * k);
        Rng rb(seed, kFrameDomain, n, 2 * k + 1);
        const CMatrix u = dense_from_tableau(random_clifford_tableau(n, ra));
        const CMatrix v = dense_from_tableau(random_clifford_tableau(n, rb));
        for (int t = 1; t <= t_max; t++) {
            stats[static_cast<std::size_t>(t - 1)][k] = pair_frame_statistic(u, v, t);
        }
    });
    const double d = static_cast<double>(std::size_t{1} << n);
    for (int t = 1; t <= t_max; t++) {
        const SampleStats st = sample_stats(stats[static_cast<std::size_t>(t - 1)]);
        const FormulaRef ref{"design_frame_potential", {d, double(t)}};
        const double z = z_score(st.mean, theory(ref), st.stderr_);
        table.add("design_sampled_frame", "n=" + std::to_string(n) + " t=" + std::to_string(t) +
                                              " draws=" + std::to_string(2 * pairs),
                  st.mean, ref, st.stderr_, std::abs(z) <= kSigma);
    }
}

// Frobenius gap of the empirical third moment of `draws` sampled Cliffords
// against its expected size sqrt((1/d - 1/D) / N), D = C(d+2, 3).
void add_sampled_moment_row(ResultTable &table, std::size_t n, std::size_t draws, uint64_t seed) {
    const std::size_t d = std::size_t{1} << n;
    std::vector<CVector> states;
    std::vector<double> weights;
    for (std::size_t k = 0; k < draws; k++) {
        Rng rng(seed, kFrameDomain, n + 100, k);
        const Tableau t = random_clifford_tableau(n, rng);
        for (std::size_t x = 0; x < d; x++) {
            states.push_back(tableau_column(t, x));
            weights.push_back(1.0 / static_cast<double>(draws * d));
        }
    }
    const RankOnePOVM m(weights, states, -1, "clifford-sample");
    const double gap = moment_t(m, 3).frobenius_gap;
    const double expected =
        std::sqrt((1.0 / double(d) - 1.0 / binomial(d + 2, 3)) / static_cast<double>(draws));
    table.add("design_sampled_moment_gap", "n=" + std::to_string(n) + " t=3 draws=" + std::to_string(draws), gap,
              {"constant", {expected}}, 0, gap <= 2 * expected);
}

// Chi-square of sampled tableaux against the uniform distribution on the
// enumerated group.
void add_chi_square_row(ResultTable &table, std::size_t n, std::size_t per_element, uint64_t seed) {
    const auto group = clifford_enumerate(n);
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < group.size(); k++) {
        index.emplace(group[k].tableau.key(), k);
    }
    const std::size_t draws = per_element * group.size();
    std::vector<std::size_t> counts(group.size(), 0);
    bool all_found = index.size() == group.size();
    for (std::size_t k = 0; k < draws; k++) {
        Rng rng(seed, kChiDomain, n, k);
        auto it = index.find(random_clifford_tableau(n, rng).key());
        if (it == index.end()) {
            all_found = false;
            continue;
        }
        counts[it->second]++;
    }
    const double expect = static_cast<double>(per_element);
    double chi2 = 0;
    for (std::size_t c : counts) {
        chi2 += (static_cast<double>(c) - expect) * (static_cast<double>(c) - expect) / expect;
    }
    const double dof = static_cast<double>(group.size() - 1);
    const double z = (chi2 - dof) / std::sqrt(2 * dof);
    table.add("design_sampler_chi2_z", "n=" + std::to_string(n) + " draws=" + std::to_string(draws) +
                                           " dof=" + std::to_string(group.size() - 1),
              z, {"constant", {kSigma}}, 0, all_found && std::abs(z) <= kSigma);
}

// Closed-form MSEM of the local shadow estimator against the outcome sum over
// an enumerated design, on random (rho, X) pairs with Tr(rho X_i) = 0.
void add_msem_rows(ResultTable &table, const RankOnePOVM &design, const std::string &name, std::size_t pairs,
                   uint64_t seed) {
    const std::size_t d = design.dim();
    double worst = 0;
    for (std::size_t k = 0; k < pairs; k++) {
        Rng rng(seed, kMsemDomain, d, k);
        const CMatrix rho = random_density(d, 1 + rng.below(d), rng);
        const std::size_t m = 1 + rng.below(3);
        std::vector<CMatrix> xs;
        for (std::size_t i = 0; i < m; i++) {
            CMatrix x = random_hermitian(d, rng);
            const double shift = trace_product(rho, x).real();
            x -= CMatrix::identity(d) * cplx(shift);
            xs.push_back(hermitian_part(x));
        }
        const RMatrix predicted = predicted_msem(rho, xs, d);
        const RMatrix enumerated = msem_by_enumeration(rho, xs, design);
        worst = std::max(worst, (predicted - enumerated).max_abs());
    }
    table.add("design_msem_oracle", name + " pairs=" + std::to_string(pairs), worst, {"constant", {1e-9}}, 0,
              worst <= 1e-9);
}

}  // namespace

ResultTable run_design_checks(const ExperimentConfig &cfg, const RunOptions &opt) {
    const uint64_t seed = cfg.seed();
    const std::string ensemble = cfg.get_string("designs.ensemble", "all");
    const int t = static_cast<int>(cfg.get_u64("designs.t", 3));
    if (t < 1 || t > 3) {
        throw ConfigError("designs.t", "t must be 1, 2 or 3");
    }
    const std::size_t frame_draws =
        opt.quick ? cfg.get_u64("designs.frame_draws_quick", 20000) : cfg.get_u64("designs.frame_draws", 100000);
    const std::size_t moment_draws = cfg.get_u64("designs.sampled_moment_draws", opt.quick ? 200 : 1000);
    const std::size_t chi_per_element = cfg.get_u64("designs.chi2_per_element", opt.quick ? 5 : 20);
    const std::size_t msem_pairs = cfg.get_u64("designs.msem_pairs", 20);

    ResultTable table;
    table.meta["designs.ensemble"] = ensemble;
    table.meta["designs.t"] = std::to_string(t);

    if (ensemble == "clifford3-sampled") {
        add_sampled_frame_rows(table, 3, frame_draws, t, seed, opt.workers);
        return table;
    }
    if (ensemble != "all") {
        const RankOnePOVM m = make_ensemble(ensemble);
        add_moment_rows(table, ensemble, m, t);
        if (t == 3) {
            add_identity_rows(table, ensemble, m, seed);
        }
        return table;
    }

    const RankOnePOVM pauli = make_ensemble("pauli1q");
    const RankOnePOVM c1 = make_ensemble("clifford1");
    const RankOnePOVM c2 = make_ensemble("clifford2");
    for (int k = 1; k <= 3; k++) {
        add_moment_rows(table, "pauli1q", pauli, k);
        add_moment_rows(table, "clifford1", c1, k);
    }
    add_moment_rows(table, "clifford2", c2, 3);
    add_moment_rows(table, "stabilizer2", make_ensemble("stabilizer2"), 3);
    add_moment_rows(table, "stabilizer3", make_ensemble("stabilizer3"), 3);

    // The computational basis is a 1-design only; its second moment must fail.
    {
        const MomentCheck neg = moment_t(computational_basis(4), 2);
        table.add("design_negative_control", "computational d=4 t=2", neg.frobenius_gap, {"none", {}}, 0,
                  neg.frobenius_gap > 0.1);
    }

    for (const auto &[name, m] : std::vector<std::pair<std::string, const RankOnePOVM *>>{
             {"pauli1q", &pauli}, {"clifford1", &c1}, {"clifford2", &c2}}) {
        add_identity_rows(table, name, *m, seed);
    }
    add_identity_rows(table, "stabilizer3", make_ensemble("stabilizer3"), seed);

    add_sampled_frame_rows(table, 3, frame_draws, 3, seed, opt.workers);
    add_sampled_moment_row(table, 3, moment_draws, seed);
    add_chi_square_row(table, 1, 1000, seed);
    add_chi_square_row(table, 2, chi_per_element, seed);

    add_msem_rows(table, c1, "clifford1 d=2", msem_pairs, seed);
    add_msem_rows(table, c2, "clifford2 d=4", std::min<std::size_t>(msem_pairs, 5), seed);
    return table;
}

}  // namespace rmetro
