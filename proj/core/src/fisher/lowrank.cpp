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


#include "rmetro/fisher/lowrank.hpp"

#include <cmath>
#include <sstream>

#include "rmetro/fisher/fisher.hpp"
#include "rmetro/fisher/optimality.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"

namespace rmetro {

LowRankSplit lowrank_split(const CMatrix &rho, const std::vector<CMatrix> &drho, double mu, double rank_tol) {
    const HermEig e = eigh(rho);
    const std::size_t d = rho.rows();
    const std::size_t m = drho.size();
    LowRankSplit out;
    out.mu = mu;
    out.pi = CMatrix(d, d);
    for (std::size_t k = 0; k < d; k++) {
        if (e.eigenvalues[k] >= mu - tol::kEig) {
            out.pi += projector(e.eigenvectors.column(k));
            out.rank_pi++;
        }
    }
    if (out.rank_pi == 0) {
        std::ostringstream ss;
        ss << "lowrank_split: no eigenvalue reaches mu = " << mu;
        throw DomainError(ss.str());
    }
    out.pi_perp = CMatrix::identity(d) - out.pi;

    out.p = std::max(0.0, trace_product(rho, out.pi_perp).real());
    out.dp.resize(m);
    for (std::size_t i = 0; i < m; i++) {
        out.dp[i] = trace_product(drho[i], out.pi_perp).real();
    }

    out.j = qfim(rho, drho, rank_tol);
    out.j_perp = RMatrix(m, m);
    out.j_p = RMatrix(m, m);
    if (out.p > tol::kProbFloor) {
        // Post-selected state sigma = Pi_perp rho Pi_perp / p with Pi_perp held fixed.
        const CMatrix sigma = out.pi_perp * rho * out.pi_perp * (1 / out.p);
        std::vector<CMatrix> dsigma;
        for (std::size_t i = 0; i < m; i++) {
            CMatrix ds = out.pi_perp * drho[i] * out.pi_perp * (1 / out.p);
            ds -= sigma * (out.dp[i] / out.p);
            dsigma.push_back(hermitian_part(ds));
        }
        out.j_perp = qfim(hermitian_part(sigma), dsigma, rank_tol);
        if (out.p < 1) {
            const double w = 1 / (out.p * (1 - out.p));
            for (std::size_t a = 0; a < m; a++) {
                for (std::size_t b = 0; b < m; b++) {
                    out.j_p(a, b) = out.dp[a] * out.dp[b] * w;
                }
            }
        }
    }
    out.j_tilde = symmetrized(out.j - out.j_perp * out.p - out.j_p);
    out.c = numerical_rank(out.j, rank_tol) == m ? near_optimality_ratio(out.j_tilde, out.j)
                                                 : near_optimality_ratio_on_range(out.j_tilde, out.j, rank_tol);

    out.sld = sld_set(rho, drho, rank_tol).operators;
    for (std::size_t i = 0; i < m; i++) {
        CMatrix lp = out.sld[i] - out.pi_perp * out.sld[i] * out.pi_perp;
        out.sld_projected.push_back(hermitian_part(lp));
        CMatrix lc = lp;
        if (out.p < 1) {
            lc += out.pi * (out.dp[i] / (1 - out.p));
        }
        out.sld_corrected.push_back(hermitian_part(lc));
    }
    return out;
}

RMatrix projected_sld_gram(const LowRankSplit &split) {
    return sld_gram(split.sld_corrected);
}

}  // namespace rmetro
