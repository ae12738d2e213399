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

#ifndef RMETRO_FISHER_FISHER_HPP
#define RMETRO_FISHER_FISHER_HPP

#include <cstddef>
#include <vector>

#include "rmetro/designs/povm.hpp"
#include "rmetro/qmath/matrix.hpp"
#include "rmetro/qmath/tolerances.hpp"

namespace rmetro {

/// Eigendecomposition of a state with eigenvalues below rank_tol * lambda_max
/// set to exactly zero.
struct SupportSpectrum {
    RVector lambda;
    CMatrix vectors;
    std::size_t rank = 0;
};
SupportSpectrum support_spectrum(const CMatrix &rho, double rank_tol = tol::kRank);

struct SLDSet {
    std::vector<CMatrix> operators;
    std::size_t support_rank = 0;
    double rank_tol = tol::kRank;
};

/// Symmetric logarithmic derivative restricted to pairs with lambda_j + lambda_k > 0.
CMatrix sld(const CMatrix &rho, const CMatrix &drho, double rank_tol = tol::kRank);
SLDSet sld_set(const CMatrix &rho, const std::vector<CMatrix> &drho, double rank_tol = tol::kRank);

/// Quantum Fisher information matrix from the spectral formula.
RMatrix qfim(const CMatrix &rho, const std::vector<CMatrix> &drho, double rank_tol = tol::kRank);
/// J_ij = Re Tr(rho {L_i, L_j}) / 2, the second route to the same matrix.
RMatrix qfim_from_sld(const CMatrix &rho, const std::vector<CMatrix> &slds);

/// Outcome probabilities and their derivatives, p_x = Tr(rho M_x).
struct OutcomeDistribution {
    RVector p;
    std::vector<RVector> dp;  // dp[i][x]
};
OutcomeDistribution outcome_distribution(const CMatrix &rho, const std::vector<CMatrix> &drho, const RankOnePOVM &m);
OutcomeDistribution outcome_distribution(const CMatrix &rho, const std::vector<CMatrix> &drho, const Povm &m);

/// Classical Fisher information matrix. Outcomes with p_x <= p_floor are
/// skipped. Throws DomainError when the measurement is incomplete.
RMatrix cfim(const CMatrix &rho, const std::vector<CMatrix> &drho, const RankOnePOVM &m,
             double p_floor = tol::kProbFloor);
RMatrix cfim(const CMatrix &rho, const std::vector<CMatrix> &drho, const Povm &m, double p_floor = tol::kProbFloor);
RMatrix cfim_from_distribution(const OutcomeDistribution &dist, double p_floor = tol::kProbFloor);

enum class DeviationKind { Plain, LowRankUnitary, LowRankGeneral, NoisyME };
const char *to_string(DeviationKind kind);

struct DeviationObservables {
    std::vector<CMatrix> X;
    DeviationKind kind = DeviationKind::Plain;
    /// The matrix inverted to build X (J or J tilde).
    RMatrix fisher;
    /// Indices of parameters whose directions fell in the truncated null space.
    std::vector<std::size_t> unidentifiable;
};

/// Plain: X_i = sum_j (J^+)_ij L_j. Low-rank kinds use the projected SLDs and
/// J tilde from lowrank_split with threshold mu.
DeviationObservables deviation_observables(const CMatrix &rho, const std::vector<CMatrix> &drho, DeviationKind kind,
                                           double mu = 1.0, double rank_tol = tol::kRank);

/// Largest deviation of the local-unbiasedness conditions
/// Tr(rho X_i) = 0 and Tr(d_j rho X_i) = delta_ij.
struct UnbiasednessGap {
    double trace_gap = 0;
    double derivative_gap = 0;
};
UnbiasednessGap local_unbiasedness_gap(const CMatrix &rho, const std::vector<CMatrix> &drho,
                                       const std::vector<CMatrix> &x);

/// Deviation observable for fidelity estimation with frozen orthogonal direction.
CMatrix fidelity_deviation_observable(const CVector &phi, const CVector &phi_perp, double f);

/// Closed-form MSEM of the local shadow estimator under a 3-design.
RMatrix predicted_msem(const CMatrix &rho, const std::vector<CMatrix> &x, std::size_t d);
/// The same quantity by summing over the outcomes of a rank-one POVM with the
/// inverse shadow channel M^{-1}(X) = (d+1) X - Tr(X) 1.
RMatrix msem_by_enumeration(const CMatrix &rho, const std::vector<CMatrix> &x, const RankOnePOVM &m);

/// K_ij = Re Tr(L_i L_j).
RMatrix sld_gram(const std::vector<CMatrix> &slds);

/// lambda_max / lambda_min over the support of rho.
double support_condition_number(const CMatrix &rho, double rank_tol = tol::kRank);

/// Coefficients of the optimal locally unbiased estimator for a finite POVM:
/// theta_hat_i(y) = theta0_i + alpha(i, y), alpha(i, y) = sum_j (I^+)_ij dp_j(y) / p(y).
struct OptimalEstimator {
    RMatrix alpha;
    RMatrix inverse_cfim;
    RVector p;
};
OptimalEstimator optimal_estimator(const OutcomeDistribution &dist, double p_floor = tol::kProbFloor);

}  // namespace rmetro

#endif
