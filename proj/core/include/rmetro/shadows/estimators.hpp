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


#ifndef RMETRO_SHADOWS_ESTIMATORS_HPP
#define RMETRO_SHADOWS_ESTIMATORS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "rmetro/qmath/matrix.hpp"
#include "rmetro/states/families.hpp"

namespace rmetro {

/// <phi|rho_hat(s)|phi> = (d+1)|<phi|s>|^2 - 1 for one snapshot.
double snapshot_overlap(const CVector &s, const CVector &phi);
/// Mean of snapshot_overlap over the snapshots.
double standard_shadow_overlap(std::span<const CVector> snapshots, const CVector &phi);

/// Tr(X rho_hat(s)) = (d+1)<s|X|s> - Tr X.
double local_shadow_term(const CVector &s, const CMatrix &x, double trace_x);
/// theta0 + mean_s Tr(X rho_hat(s)).
double local_shadow_estimate(std::span<const CVector> snapshots, const CMatrix &x, double theta0);

struct Algorithm1Options {
    double cutoff = 1e-6;
    std::size_t max_iter = 50;
    /// Coarse and iterated fidelities are kept in [eps, 1 - eps].
    double eps = 1e-6;
};

struct Algorithm1Result {
    double f_hat = 0;
    double f_coarse = 0;
    RVector phi_coarse;
    std::size_t iterations = 0;
    /// f_hat after each update.
    std::vector<double> trace;
    bool converged = false;
    /// Coarse weights were negative or summed past 1 - eps and were clamped.
    bool clamped_coarse = false;
    /// Some f iterate left [eps, 1 - eps] and was clamped.
    bool clamped_iterate = false;
    /// Coarse state coincided with the target; a fixed orthogonal direction was used.
    bool degenerate_direction = false;
};

/// Local shadow fidelity estimation of a GHZ-mix state against `target`:
/// coarse weights from standard overlaps with the GHZ basis states, then
/// f <- f + mean_s Tr(X_f rho_hat(s)) with the orthogonal direction frozen at
/// the coarse estimate, until |step| < cutoff.
Algorithm1Result algorithm1_fidelity(std::span<const CVector> snapshots, const CVector &target,
                                     const GHZMixFamily &family, const Algorithm1Options &options = {});

/// Single-shot MSE of the local estimator under a 3-design: 4(d+1) f(1-f) / (d+2).
double local_fidelity_variance(std::size_t d, double f);
/// Single-shot MSE of the standard estimator: 2(d+1)(1+2f)/(d+2) - (1+f)^2.
double standard_fidelity_variance(std::size_t d, double f);

}  // namespace rmetro

#endif
