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
#include <sstream>

#include "rmetro/designs/povm.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/fisher/optimality.hpp"
#include "rmetro/harness/experiments.hpp"
#include "rmetro/harness/parallel.hpp"
#include "rmetro/models/hamiltonian.hpp"
#include "rmetro/qmath/random.hpp"
#include "rmetro/shadows/estimators.hpp"
#include "rmetro/shadows/snapshot.hpp"
#include "rmetro/states/families.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kSelfDomain = 0x73656c6674;  // "selft"

bool close(double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

}  // namespace

ResultTable run_selftest(const ExperimentConfig &cfg, const RunOptions &) {
    const uint64_t seed = cfg.seed();
    ResultTable table;

    // Born sampling of |0><0| in the computational basis never leaves outcome 0.
    {
        const CMatrix rho = projector(basis_vector(4, 0));
        const CMatrix u = CMatrix::identity(4);
        Rng rng(seed, kSelfDomain, 1);
        std::size_t nonzero = 0;
        for (int k = 0; k < 1000; k++) {
            nonzero += simulate_measurement(rho, u, rng) != 0 ? 1 : 0;
        }
        table.add("self_pure_outcome", "d=4 shots=1000", double(nonzero), {"constant", {0.0}}, 0, nonzero == 0);
    }

    // The maximally mixed state gives uniform outcomes under any unitary.
    {
        const std::size_t d = 4, shots = 40000;
        CMatrix rho = CMatrix::identity(d);
        rho *= cplx(0.25);
        Rng rng(seed, kSelfDomain, 2);
        const CMatrix u = random_unitary(d, rng);
        std::vector<double> counts(d, 0);
        for (std::size_t k = 0; k < shots; k++) {
            counts[simulate_measurement(rho, u, rng)] += 1;
        }
        const double e = static_cast<double>(shots) / static_cast<double>(d);
        double chi2 = 0;
        for (double c : counts) {
            chi2 += (c - e) * (c - e) / e;
        }
        const double z = (chi2 - double(d - 1)) / std::sqrt(2.0 * double(d - 1));
        table.add("self_mixed_uniform_chi2_z", "d=4 shots=40000", z, {"constant", {5.0}}, 0, std::abs(z) <= 5);
    }

    // Snapshots are Hermitian with unit trace; single-shot overlaps lie in [-1, d].
    {
        Rng rng(seed, kSelfDomain, 3);
        double worst_herm = 0, worst_trace = 0;
        bool in_range = true;
        for (int k = 0; k < 50; k++) {
            const CVector s = random_state(8, rng);
            const CMatrix e = expand_snapshot(s);
            worst_herm = std::max(worst_herm, hermiticity_gap(e));
            worst_trace = std::max(worst_trace, std::abs(e.trace() - cplx(1)));
            const double o = snapshot_overlap(s, random_state(8, rng));
            in_range = in_range && o >= -1 - 1e-12 && o <= 8 + 1e-12;
        }
        table.add("self_snapshot_hermitian", "d=8", worst_herm, {"constant", {0.0}}, 0, worst_herm <= 1e-12);
        table.add("self_snapshot_trace", "d=8", worst_trace, {"constant", {0.0}}, 0, worst_trace <= 1e-12);
        table.add("self_overlap_range", "d=8", in_range ? 1.0 : 0.0, {"constant", {1.0}}, 0, in_range);
    }

    // Local estimator with X = 0 returns theta0.
    {
        Rng rng(seed, kSelfDomain, 4);
        std::vector<CVector> snaps;
        for (int k = 0; k < 10; k++) {
            snaps.push_back(random_state(4, rng));
        }
        const double v = local_shadow_estimate(snaps, CMatrix(4, 4), 0.37);
        table.add("self_local_zero_observable", "d=4", v, {"constant", {0.37}}, 0, v == 0.37);
    }

    // Closed-form constants.
    {
        table.add("self_design_pure_bound", "d=2", design_pure_bound(2), {"constant", {1.0 / 3.0}}, 0,
                  close(design_pure_bound(2), 1.0 / 3.0));
        table.add("self_design_pure_bound", "d=4", design_pure_bound(4), {"constant", {0.3}}, 0,
                  close(design_pure_bound(4), 0.3));
        table.add("self_wmse_w", "n=1", wmse_lower_bound_w(1), {"wmse_w", {1.0}}, 0, close(wmse_lower_bound_w(1), 0.75));
        table.add("self_wmse_w", "n=2", wmse_lower_bound_w(2), {"wmse_w", {2.0}}, 0, close(wmse_lower_bound_w(2), 3.75));
        table.add("self_std_variance_f1", "d=8", standard_fidelity_variance(8, 1.0), {"constant", {1.4}}, 0,
                  close(standard_fidelity_variance(8, 1.0), 1.4));
        table.add("self_local_variance_f1", "d=8", local_fidelity_variance(8, 1.0), {"constant", {0.0}}, 0,
                  close(local_fidelity_variance(8, 1.0), 0.0));
        const PauliChannel dep = PauliChannel::depolarizing(2, 0.3);
        double total = 0;
        for (double q : dep.rates()) {
            total += q;
        }
        table.add("self_depolarizing_rates", "n=2 q=0.3", total, {"constant", {1.0}}, 0, close(total, 1.0));
        const RMatrix bell = qfim_noisy_bell(PauliChannel::identity(2));
        double off = 0;
        for (std::size_t r = 0; r < bell.rows(); r++) {
            for (std::size_t c = 0; c < bell.cols(); c++) {
                off = std::max(off, std::abs(bell(r, c) - (r == c ? 4.0 : 0.0)));
            }
        }
        table.add("self_noiseless_bell_qfim", "n=2", off, {"constant", {0.0}}, 0, off <= 1e-12);
    }

    // POVM completeness of the built-in measurements.
    for (const auto &m : {pauli_povm_1q(), computational_basis(8)}) {
        table.add("self_povm_complete", m.label(), m.completeness_error(), {"constant", {0.0}}, 0,
                  m.completeness_error() <= 1e-12);
    }

    // Bootstrap standard errors are positive and shrink with more batches.
    {
        Rng rng(seed, kSelfDomain, 5);
        std::vector<double> errs(2000);
        for (auto &e : errs) {
            e = rng.normal();
        }
        Rng b1(seed, kSelfDomain, 6), b2(seed, kSelfDomain, 7);
        const double small = bootstrap_rmse_stderr(std::span<const double>(errs).first(50), 200, b1);
        const double large = bootstrap_rmse_stderr(errs, 200, b2);
        table.add("self_bootstrap_shrinks", "50 vs 2000 batches", large / small, {"none", {}}, 0,
                  small > 0 && large > 0 && large < small);
    }

    // CSV round trip and formula re-verification of this table so far.
    {
        std::ostringstream out;
        table.write_csv(out);
        std::istringstream in(out.str());
        const ResultTable back = ResultTable::read_csv(in);
        std::ostringstream again;
        back.write_csv(again);
        const bool same = again.str() == out.str();
        table.add("self_csv_round_trip", std::to_string(back.rows.size()) + " rows", same ? 1.0 : 0.0,
                  {"constant", {1.0}}, 0, same);
        const auto bad = back.verify_formulas();
        table.add("self_formula_reverify", std::to_string(back.rows.size()) + " rows", double(bad.size()),
                  {"constant", {0.0}}, 0, bad.empty());
    }
    return table;
}

}  // namespace rmetro
