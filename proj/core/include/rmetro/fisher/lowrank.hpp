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

#ifndef RMETRO_FISHER_LOWRANK_HPP
#define RMETRO_FISHER_LOWRANK_HPP

#include <vector>

#include "rmetro/qmath/matrix.hpp"
#include "rmetro/qmath/tolerances.hpp"

namespace rmetro {

/// Split of a state into the eigenspace with eigenvalues >= mu (Pi) and its
/// complement, with the Fisher bookkeeping that goes with it.
struct LowRankSplit {
    double mu = 1;
    CMatrix pi;
    CMatrix pi_perp;
    std::size_t rank_pi = 0;
    /// p = Tr(rho Pi_perp) and its derivatives.
    double p = 0;
    RVector dp;
    RMatrix j;
    /// QFIM of the post-selected state Pi_perp rho Pi_perp / p.
    RMatrix j_perp;
    /// Fisher information of the Bernoulli variable {p, 1 - p}.
    RMatrix j_p;
    /// J - p J_perp - J_p.
    RMatrix j_tilde;
    /// Largest c with J tilde >= c J, taken on the range of J when J is singular.
    double c = 0;
    std::vector<CMatrix> sld;
    /// L - Pi_perp L Pi_perp
    std::vector<CMatrix> sld_projected;
    /// L - Pi_perp L Pi_perp + dp / (1 - p) Pi
    std::vector<CMatrix> sld_corrected;
};

/// Throws DomainError when no eigenvalue reaches mu.
LowRankSplit lowrank_split(const CMatrix &rho, const std::vector<CMatrix> &drho, double mu,
                           double rank_tol = tol::kRank);

/// K tilde_ij = Re Tr(L tilde_i L tilde_j) for the corrected projected SLDs.
RMatrix projected_sld_gram(const LowRankSplit &split);

}  // namespace rmetro

#endif
