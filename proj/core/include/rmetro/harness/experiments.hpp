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

#ifndef RMETRO_HARNESS_EXPERIMENTS_HPP
#define RMETRO_HARNESS_EXPERIMENTS_HPP

#include <cstddef>

#include "rmetro/harness/config.hpp"
#include "rmetro/harness/result_table.hpp"

namespace rmetro {

struct RunOptions {
    std::size_t workers = 1;
    /// Reduced shot and batch counts.
    bool quick = false;
};

/// Local versus standard shadow fidelity estimation on three-qubit GHZ
/// mixtures. Config section [fig2]: qubits, target_phi, state_phi (list),
/// pool_unitaries, shots_per_unitary, batch_size, batches, quick_batches,
/// bootstrap, subsample (without | with), cutoff, max_iter.
ResultTable run_fig2(const ExperimentConfig &cfg, const RunOptions &opt);

/// Near-optimality constants of design measurements against the guaranteed
/// bounds for pure, low-rank and well-conditioned families.
ResultTable run_theorem_sweep(const ExperimentConfig &cfg, const RunOptions &opt);

/// Fidelity estimation of depolarized states: Pauli and Haar measurement CFI
/// against the QFI and the Haar upper bound.
ResultTable run_nogo_sweep(const ExperimentConfig &cfg, const RunOptions &opt);

/// Hamiltonian estimation with maximally entangled and random stabilizer inputs.
ResultTable run_hamiltonian_checks(const ExperimentConfig &cfg, const RunOptions &opt);

/// Design moments, design identities, sampler statistics and the MSEM oracle.
/// [designs] ensemble = all | pauli1q | clifford1 | clifford2 | stabilizer<n> |
/// clifford3-sampled, t = 1..3.
ResultTable run_design_checks(const ExperimentConfig &cfg, const RunOptions &opt);

/// Invariant-based checks: QCRB and Gill-Massar bounds, snapshot unbiasedness,
/// optimal-estimator covariance, local-estimator variance, config round trip.
ResultTable run_property_suite(const ExperimentConfig &cfg, const RunOptions &opt);

/// Fast closed-form sanity checks.
ResultTable run_selftest(const ExperimentConfig &cfg, const RunOptions &opt);

/// Default configuration text for each experiment id.
std::string default_config_text(const std::string &experiment);

}  // namespace rmetro

#endif
