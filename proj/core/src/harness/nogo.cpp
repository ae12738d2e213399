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
#include <sstream>

#include "rmetro/designs/povm.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/states/families.hpp"
#include "rmetro/states/registry.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kHaarDomain = 0x6e6f676f68;  // "nogoh"
constexpr double kSigma = 5.0;

// Asymptotic Kolmogorov tail Pr[sqrt(n) D > t].
double kolmogorov_tail(double t) {
    if (t < 0.2) {
        return 1.0;
    }
    double s = 0;
    for (int k = 1; k <= 100; k++) {
        const double term = std::exp(-2.0 * k * k * t * t);
        s += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-18) {
            break;
        }
    }
    return std::clamp(s, 0.0, 1.0);
}

std::string f_label(double f) {
    std::ostringstream ss;
    ss << "f=" << f;
    return ss.str();
}

}  // namespace

ResultTable run_nogo_sweep(const ExperimentConfig &cfg, const RunOptions &opt) {
    const uint64_t seed = cfg.seed();
    const auto grid = cfg.get_doubles("nogo.f_grid", {0.9, 0.99, 0.995, 0.999, 0.9999});
    const auto dims = cfg.get_u64s("nogo.dims", {2, 4, 8});
    const std::size_t samples =
        opt.quick ? cfg.get_u64("nogo.haar_samples_quick", 20000) : cfg.get_u64("nogo.haar_samples", 100000);
    const std::size_t ks_samples = cfg.get_u64("nogo.ks_samples", 100000);
    const double ks_alpha = cfg.get_double("nogo.ks_alpha", 1e-3);
    const double ratio_f = cfg.get_double("nogo.ratio_f", 0.999);
    const double ratio_limit = cfg.get_double("nogo.ratio_limit", 0.02);
    for (double f : grid) {
        if (!(f > 0 && f < 1)) {
            throw ConfigError("nogo.f_grid", "fidelities must lie strictly inside (0, 1)");
        }
    }
    if (samples < 2 || ks_samples < 2) {
        throw ConfigError("nogo.haar_samples", "need at least two samples");
    }

    ResultTable table;

    // Single-qubit Pauli measurement on the symmetric-Bloch target.
    {
        DepolarizedFidelityFamily family(parse_target_state("bloch_symmetric", 2));
        const RankOnePOVM pauli = pauli_povm_1q();
        std::vector<double> ratios;
        for (double f : grid) {
            const CMatrix rho = family.eval({f});
            const auto drho = family.derivs({f});
            const double i = cfim(rho, drho, pauli)(0, 0);
            const double j = qfim(rho, drho)(0, 0);
            const FormulaRef fi{"pauli_povm_fidelity_cfi", {f}};
            const FormulaRef fj{"fidelity_qfi", {f}};
            table.add("nogo_pauli_cfi", f_label(f), i, fi, 0, std::abs(i - theory(fi)) <= 1e-10);
            table.add("nogo_qfi", "d=2 " + f_label(f), j, fj, 0, std::abs(j - theory(fj)) <= 1e-8 * theory(fj));
            table.add("nogo_pauli_ratio", f_label(f), i / j, {"none", {}}, 0, true);
            ratios.push_back(i / j);
            if (std::abs(f - ratio_f) < 1e-15) {
                table.add("nogo_pauli_ratio_limit", f_label(f), i / j, {"constant", {ratio_limit}}, 0,
                          i / j < ratio_limit);
            }
        }
        bool decreasing = true;
        for (std::size_t k = 1; k < ratios.size(); k++) {
            decreasing = decreasing && ratios[k] < ratios[k - 1];
        }
        table.add("nogo_pauli_ratio_decreasing", "d=2", decreasing ? 1.0 : 0.0, {"constant", {1.0}}, 0, decreasing);
    }

    // Haar-random rank-one measurement. Its CFI is d E[(d_f p)^2 / p] over
    // Haar states s, with p = <s|rho_f|s> depending on s only through
    // tau = |<phi|s>|^2.
    for (uint64_t d : dims) {
        Rng trng(seed, kHaarDomain, d, 1u << 20);
        const CVector phi = random_state(d, trng);
        const std::size_t n = std::max(samples, ks_samples);
        std::vector<double> tau(n);
        parallel_for(n, opt.workers, [&](std::size_t k) {
            Rng rng(seed, kHaarDomain, d, k);
            tau[k] = std::norm(inner(phi, random_state(d, rng)));
        });
        const double dd = static_cast<double>(d);

        std::vector<double> ratios;
        for (double f : grid) {
            std::vector<double> terms(samples);
            for (std::size_t k = 0; k < samples; k++) {
                const double p = f * tau[k] + (1 - f) * (1 - tau[k]) / (dd - 1);
                const double dp = tau[k] - (1 - tau[k]) / (dd - 1);
                terms[k] = dd * dp * dp / p;
            }
            const SampleStats st = sample_stats(terms);
            const std::string sweep = "d=" + std::to_string(d) + " " + f_label(f);
            const FormulaRef bound{"haar_cfi_bound", {dd, f}};
            const FormulaRef quad{"haar_cfi_quadrature", {dd, f}};
            table.add("nogo_haar_cfi_bound", sweep, st.mean, bound, st.stderr_,
                      st.mean <= theory(bound) + kSigma * st.stderr_);
            table.add("nogo_haar_cfi_quadrature", sweep, st.mean, quad, st.stderr_,
                      std::abs(z_score(st.mean, theory(quad), st.stderr_)) <= kSigma);
            ratios.push_back(theory(quad) * f * (1 - f));
        }
        bool decreasing = true;
        for (std::size_t k = 1; k < ratios.size(); k++) {
            decreasing = decreasing && ratios[k] < ratios[k - 1];
        }
        table.add("nogo_haar_ratio_decreasing", "d=" + std::to_string(d), decreasing ? 1.0 : 0.0, {"constant", {1.0}},
                  0, decreasing);

        // Overlap distribution: Pr[tau <= x] = 1 - (1 - x)^(d-1).
        std::vector<double> sorted(tau.begin(), tau.begin() + static_cast<std::ptrdiff_t>(ks_samples));
        std::sort(sorted.begin(), sorted.end());
        double dmax = 0;
        const double m = static_cast<double>(ks_samples);
        for (std::size_t k = 0; k < ks_samples; k++) {
            const double cdf = 1 - std::pow(1 - sorted[k], dd - 1);
            dmax = std::max({dmax, cdf - static_cast<double>(k) / m, static_cast<double>(k + 1) / m - cdf});
        }
        const double pvalue = kolmogorov_tail(std::sqrt(m) * dmax);
        table.add("nogo_overlap_ks_pvalue", "d=" + std::to_string(d) + " samples=" + std::to_string(ks_samples), pvalue,
                  {"constant", {ks_alpha}}, 0, pvalue > ks_alpha);
    }
    return table;
}

}  // namespace rmetro
