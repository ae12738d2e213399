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


#ifndef RMETRO_DESIGNS_MOMENTS_HPP
#define RMETRO_DESIGNS_MOMENTS_HPP

#include <cstddef>

#include "rmetro/designs/povm.hpp"
#include "rmetro/qmath/matrix.hpp"

namespace rmetro {

double binomial(std::size_t n, std::size_t k);

/// (1/t!) sum over permutations of the tensor factors of (C^d)^{(x) t}.
CMatrix symmetric_projector(std::size_t d, int t);
/// Haar t-th moment of a random state: symmetric projector / C(d + t - 1, t).
CMatrix haar_moment(std::size_t d, int t);

struct MomentCheck {
    CMatrix lhs;
    CMatrix rhs;
    double frobenius_gap = 0;
};

/// lhs = sum_s q_s (|s><s|)^{(x) t} against the Haar moment. t in {1, 2, 3}.
MomentCheck moment_t(const RankOnePOVM &m, int t);

/// Frobenius gaps of the two design averages
///   sum_s q_s |s><s| <s|A|s>           vs (Tr(A) 1 + A) / ((d+1) d)
///   sum_s q_s |s><s| <s|B|s> <s|C|s>   vs ((Tr(BC) + Tr B Tr C) 1 + Tr(B) C + Tr(C) B + {B, C}) / ((d+2)(d+1)d)
struct DesignIdentityGaps {
    double first = 0;
    double second = 0;
};
DesignIdentityGaps design_identity_check(const RankOnePOVM &m, const CMatrix &a, const CMatrix &b, const CMatrix &c);

/// (1/d^2) sum_{x,y} |<x|U^dagger V|y>|^{2t}. Over independent pairs drawn
/// from an ensemble this averages to the squared Frobenius norm of the
/// ensemble's t-th moment, which equals 1/C(d+t-1, t) exactly for a t-design.
double pair_frame_statistic(const CMatrix &u, const CMatrix &v, int t);

}  // namespace rmetro

#endif
