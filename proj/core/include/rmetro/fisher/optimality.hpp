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

#ifndef RMETRO_FISHER_OPTIMALITY_HPP
#define RMETRO_FISHER_OPTIMALITY_HPP

#include <cstddef>

#include "rmetro/qmath/matrix.hpp"

namespace rmetro {

/// Which individual-measurement information bound to compare against:
/// d - 1 (full), r - 1 (parameters moving only within the rank-r support),
/// d - r (parameters moving only off the support).
enum class GMVariant { Full, Support, OffDiag };

struct GillMassarResult {
    double gm = 0;
    double bound = 0;
    bool ok = false;
};

/// gm = Tr(J^{-1} I). Throws NumericalError for singular J.
GillMassarResult gill_massar(const RMatrix &j, const RMatrix &i, std::size_t d, GMVariant variant = GMVariant::Full,
                             std::size_t r = 0);

/// Largest c with I >= c J, as lambda_min(J^{-1/2} I J^{-1/2}).
double near_optimality_ratio(const RMatrix &i, const RMatrix &j);
/// The same ratio with v restricted to the range of J; used when some
/// parameters carry no information at all.
double near_optimality_ratio_on_range(const RMatrix &i, const RMatrix &j, double rank_tol = 1e-12);

struct WeakNearOptimalityResult {
    bool identifiable = true;
    double trace_j_iinv = 0;
    /// c1 m^2 / reference_gm_bound
    double trace_limit = 0;
    bool trace_ok = false;
    /// largest c with I >= c (Tr(J^{-1} I)/m) J
    double spread = 0;
    bool spread_ok = false;
    bool ok = false;
};

WeakNearOptimalityResult weak_near_optimality_check(const RMatrix &i, const RMatrix &j, std::size_t m, double c1,
                                                    double c2, double reference_gm_bound);

/// Tr(W V).
double wmse(const RMatrix &w, const RMatrix &v);

/// Guaranteed near-optimality constant of 3-design measurements on pure states.
double design_pure_bound(std::size_t d);
/// Same for (mu, c) approximately low-rank states with spectrum-preserving
/// dynamics in the discarded subspace.
double lowrank_unitary_bound(std::size_t d, double mu, double c);
/// Same for general (mu, c) approximately low-rank states.
double lowrank_general_bound(std::size_t d, double mu, double c);
/// Upper bound on Tr(J I^{-1}) for rank-r states with support condition number kappa.
double well_conditioned_trace_bound(std::size_t d, std::size_t r, double kappa, std::size_t m);

}  // namespace rmetro

#endif
