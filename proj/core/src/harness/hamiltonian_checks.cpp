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

#include "rmetro/designs/clifford.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/fisher/lowrank.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"
#include "rmetro/models/hamiltonian.hpp"
#include "rmetro/qmath/linalg.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kChannelDomain = 0x68616d6368;  // "hamch"
constexpr uint64_t kMcDomain = 0x68616d6d63;       // "hammc"
constexpr double kSigma = 5.0;

double max_offset_from_scaled_identity(const RMatrix &a, double diag) {
    double worst = 0;
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            worst = std::max(worst, std::abs(a(r, c) - (r == c ? diag : 0.0)));
        }
    }
    return worst;
}

double trace_inverse(const RMatrix &a) {
    const RMatrix inv = pinv_sym(a);
    double t = 0;
    for (std::size_t k = 0; k < a.rows(); k++) {
        t += inv(k, k);
    }
    return t;
}

// Largest |z| over the entries of an MC matrix against diag * 1. Entries whose
// samples never vary get a floor on the standard error.
double max_z_scaled_identity(const RMatrix &mean, const RMatrix &stderr_m, double diag) {
    double worst = 0;
    for (std::size_t r = 0; r < mean.rows(); r++) {
        for (std::size_t c = 0; c < mean.cols(); c++) {
            const double se = std::max(stderr_m(r, c), 1e-12);
            worst = std::max(worst, std::abs(z_score(mean(r, c), r == c ? diag : 0.0, se)));
        }
    }
    return worst;
}

std::string q_label(double q) {
    std::ostringstream ss;
    ss << "q=" << q;
    return ss.str();
}

struct NamedChannel {
    std::string name;
    PauliChannel ch;
};

std::vector<NamedChannel> channels_for(std::size_t n, double q, uint64_t seed) {
    return {{"depolarizing", PauliChannel::depolarizing(n, q)},
            {"random", random_pauli_channel(n, q, seed)}};
}

}  // namespace

ResultTable run_hamiltonian_checks(const ExperimentConfig &cfg, const RunOptions &opt) {
    const uint64_t seed = cfg.seed();
    const auto qubits = cfg.get_u64s("hamiltonian.qubits", {1, 2});
    const auto noise_q = cfg.get_doubles("hamiltonian.noise_q", {0.01, 0.05, 0.1});
    const std::size_t random_channels = cfg.get_u64("hamiltonian.random_channels", 20);
    const double random_max_total = cfg.get_double("hamiltonian.random_max_total", 0.2);
    const std::size_t mc_inputs =
        opt.quick ? cfg.get_u64("hamiltonian.mc_inputs_quick", 400) : cfg.get_u64("hamiltonian.mc_inputs", 4000);
    const double c_slack = cfg.get_double("hamiltonian.lowrank_slack", 1e-6);

    ResultTable table;

    for (uint64_t n : qubits) {
        const double d = static_cast<double>(std::size_t{1} << n);
        const std::string nl = "n=" + std::to_string(n);
        const CVector me = maximally_entangled_state(n);

        // Noiseless maximally entangled probe: J = 4 * 1 and Tr(J^{-1}) = w.
        const HamiltonianOutput clean = hamiltonian_output(me, n);
        const RMatrix j = qfim(clean.rho, clean.drho);
        const double gap = max_offset_from_scaled_identity(j, 4.0);
        table.add("ham_me_qfim_offset", nl, gap, {"constant", {0.0}}, 0, gap <= 1e-12);
        const FormulaRef w{"wmse_w", {double(n)}};
        const double tr = trace_inverse(j);
        table.add("ham_me_trace_inverse", nl, tr, w, 0, std::abs(tr - theory(w)) <= 1e-10 * theory(w));
        const double closed_gap = (qfim_hamiltonian_pure(me, n) - j).max_abs();
        table.add("ham_me_closed_form", nl, closed_gap, {"constant", {0.0}}, 0, closed_gap <= 1e-12);

        // Random stabilizer inputs: exact orbit average, then Monte Carlo.
        const FormulaRef avg{"stabilizer_avg_qfim_diag", {d}};
        const RMatrix javg = stabilizer_average_qfim(n);
        const double avg_gap = max_offset_from_scaled_identity(javg, theory(avg));
        table.add("ham_stabilizer_avg_qfim_exact", nl, javg(0, 0), avg, avg_gap, avg_gap <= 1e-12);
        const double tr_avg = trace_inverse(javg);
        table.add("ham_stabilizer_trace_inverse", nl, tr_avg, w, 0, tr_avg >= theory(w) - 1e-12);
        if (n >= 2) {
            const EnsembleFisher mc =
                stabilizer_ensemble_cfim(n, nullptr, stabilizer_povm(n), mc_inputs, seed ^ kMcDomain);
            const double z = max_z_scaled_identity(mc.qfim, mc.qfim_stderr, theory(avg));
            table.add("ham_stabilizer_avg_qfim_mc_max_z", nl + " inputs=" + std::to_string(mc_inputs), z,
                      {"constant", {kSigma}}, 0, z <= kSigma);
        }

        // Noisy maximally entangled output: closed-form diagonal against the
        // generic spectral QFIM.
        double bell_worst = 0;
        bool lower_ok = true;
        for (std::size_t k = 0; k < random_channels; k++) {
            const PauliChannel ch = random_pauli_channel(n, random_max_total, Rng(seed, kChannelDomain, n, k)());
            const HamiltonianOutput out = hamiltonian_output(me, n, &ch);
            const RMatrix generic = qfim(out.rho, out.drho);
            const RMatrix closed = qfim_noisy_bell(ch);
            bell_worst = std::max(bell_worst, (generic - closed).max_abs());
            const double lower = 4 * (1 - 2 * ch.total()) * (1 - 2 * ch.total());
            for (std::size_t i = 0; i < closed.rows(); i++) {
                lower_ok = lower_ok && closed(i, i) >= lower - 1e-12;
            }
        }
        table.add("ham_noisy_bell_vs_generic", nl + " channels=" + std::to_string(random_channels), bell_worst,
                  {"constant", {0.0}}, 0, bell_worst <= 1e-8);
        table.add("ham_noisy_bell_lower_bound", nl + " channels=" + std::to_string(random_channels),
                  lower_ok ? 1.0 : 0.0, {"constant", {1.0}}, 0, lower_ok);

        for (double q : noise_q) {
            for (const auto &[name, ch] : channels_for(n, q, Rng(seed, kChannelDomain, n, 1000 + std::llround(q * 1e6))())) {
                const double qt = ch.total();
                const std::string sweep = nl + " " + q_label(q) + " " + name + " total=" + format_double(qt);
                const FormulaRef cref{"noisy_lowrank_c", {qt}};
                const double bound_c = theory(cref) - c_slack;

                // Low-rank certification of the maximally entangled output at mu = 1 - q.
                const HamiltonianOutput out = hamiltonian_output(me, n, &ch);
                const LowRankSplit split = lowrank_split(out.rho, out.drho, 1 - qt);
                table.add("ham_lowrank_c_me", sweep, split.c, cref, 0, split.c >= bound_c);

                // Same for every stabilizer input (worst case reported).
                double worst_c = 1;
                for (const CVector &psi : stabilizer_states(n)) {
                    const HamiltonianOutput so = hamiltonian_output(psi, n, &ch);
                    worst_c = std::min(worst_c, lowrank_split(so.rho, so.drho, 1 - qt).c);
                }
                table.add("ham_lowrank_c_stabilizer", sweep, worst_c, cref, 0, worst_c >= bound_c);

                if (n == 1 && name == "depolarizing") {
                    const double bell_gap = (qfim(out.rho, out.drho) - qfim_noisy_bell(ch)).max_abs();
                    table.add("ham_noisy_bell_depolarizing", sweep, bell_gap, {"constant", {0.0}}, 0, bell_gap <= 1e-8);
                }

                // Design measurement on the maximally entangled output (joint dimension d^2).
                if (n == 1) {
                    const RMatrix i = cfim(out.rho, out.drho, stabilizer_povm(2));
                    const double lam = lambda_min(i);
                    const FormulaRef b{"me_noisy_cfim_bound", {d * d, qt}};
                    table.add("ham_me_cfim_lower", sweep, lam, b, 0, lam >= theory(b) - 1e-10);
                }

                // Random stabilizer inputs measured with a design on the probe.
                const EnsembleFisher ex = stabilizer_ensemble_fisher_exact(n, &ch, stabilizer_povm(n));
                const FormulaRef sb{"stabilizer_noisy_cfim_bound", {d, qt}};
                const double lam = lambda_min(ex.cfim);
                table.add("ham_stabilizer_cfim_lower", sweep + " exact", lam, sb, 0, lam >= theory(sb) - 1e-10);
                const bool jt_ok = psd_ge(ex.qfim, ex.jtilde);
                table.add("ham_stabilizer_jtilde_below_qfim", sweep, lambda_min(symmetrized(ex.qfim - ex.jtilde)),
                          {"constant", {0.0}}, 0, jt_ok);
                if (n >= 2) {
                    const EnsembleFisher mc = stabilizer_ensemble_cfim(n, &ch, stabilizer_povm(n), mc_inputs,
                                                                       seed ^ (kMcDomain + std::llround(q * 1e6)));
                    double zmax = 0;
                    for (std::size_t r = 0; r < mc.cfim.rows(); r++) {
                        for (std::size_t c = 0; c < mc.cfim.cols(); c++) {
                            const double se = std::max(mc.cfim_stderr(r, c), 1e-12);
                            zmax = std::max(zmax, std::abs(z_score(mc.cfim(r, c), ex.cfim(r, c), se)));
                        }
                    }
                    table.add("ham_stabilizer_cfim_mc_vs_exact_max_z", sweep + " inputs=" + std::to_string(mc_inputs),
                              zmax, {"constant", {kSigma}}, 0, zmax <= kSigma);
                }
            }
        }
    }

    // Closed-form deviation observables.
    for (double q : noise_q) {
        const PauliChannel ch = random_pauli_channel(1, q, Rng(seed, kChannelDomain, 7, std::llround(q * 1e6))());
        const HamiltonianOutput out = hamiltonian_output(maximally_entangled_state(1), 1, &ch);
        std::vector<CMatrix> xs;
        for (const auto &p : hamiltonian_paulis(1)) {
            xs.push_back(deviation_me_noisy(ch, p));
        }
        const UnbiasednessGap g = local_unbiasedness_gap(out.rho, out.drho, xs);
        const double gap = std::max(g.trace_gap, g.derivative_gap);
        table.add("ham_me_deviation_unbiased", "n=1 " + q_label(q) + " random", gap, {"constant", {0.0}}, 0,
                  gap <= 1e-10);
        const DeviationObservables num =
            deviation_observables(out.rho, out.drho, DeviationKind::LowRankUnitary, 1 - ch.total());
        double diff = 0;
        for (std::size_t k = 0; k < xs.size(); k++) {
            diff = std::max(diff, (xs[k] - num.X[k]).max_abs());
        }
        table.add("ham_me_deviation_vs_numerical", "n=1 " + q_label(q) + " random", diff, {"constant", {0.0}}, 0,
                  diff <= 1e-9);
    }
    for (uint64_t n : qubits) {
        for (double q : noise_q) {
            const PauliChannel ch = PauliChannel::depolarizing(n, q);
            const auto paulis = hamiltonian_paulis(n);
            const auto states = stabilizer_states(n);
            const std::size_t m = paulis.size();
            RMatrix avg_d(m, m);
            double avg_t = 0;
            for (const CVector &psi : states) {
                const HamiltonianOutput out = hamiltonian_output(psi, n, &ch);
                for (std::size_t i = 0; i < m; i++) {
                    const CMatrix x = deviation_stabilizer_depolarizing(psi, paulis[i], q);
                    avg_t = std::max(avg_t, std::abs(trace_product(out.rho, x).real()));
                    for (std::size_t jj = 0; jj < m; jj++) {
                        avg_d(i, jj) += trace_product(out.drho[jj], x).real() / static_cast<double>(states.size());
                    }
                }
            }
            const double gap = std::max(avg_t, max_offset_from_scaled_identity(avg_d, 1.0));
            table.add("ham_stabilizer_deviation_unbiased", "n=" + std::to_string(n) + " " + q_label(q) + " depolarizing",
                      gap, {"constant", {0.0}}, 0, gap <= 1e-10);
        }
    }
    return table;
}

}  // namespace rmetro
