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


#include "rmetro/designs/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

namespace {

void require_t(int t) {
    if (t < 1 || t > 3) {
        throw DomainError("moment order t must lie in 1..3");
    }
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int k = 0; k < e; k++) {
        r *= b;
    }
    return r;
}

CVector tensor_power(const CVector &v, int t) {
    CVector out = v;
    for (int k = 1; k < t; k++) {
        out = kron(out, v);
    }
    return out;
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    double r = 1;
    for (std::size_t i = 1; i <= k; i++) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

CMatrix symmetric_projector(std::size_t d, int t) {
    require_t(t);
    const std::size_t dim = ipow(d, t);
    std::vector<int> perm(static_cast<std::size_t>(t));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double w = 1.0 / static_cast<double>(perms.size());

    CMatrix p(dim, dim);
    std::vector<std::size_t> digits(static_cast<std::size_t>(t));
    for (std::size_t idx = 0; idx < dim; idx++) {
        std::size_t rest = idx;
        for (int k = t - 1; k >= 0; k--) {
            digits[static_cast<std::size_t>(k)] = rest % d;
            rest /= d;
        }
        for (const auto &pi : perms) {
            std::size_t out = 0;
            for (int k = 0; k < t; k++) {
                out = out * d + digits[static_cast<std::size_t>(pi[static_cast<std::size_t>(k)])];
            }
            p(out, idx) += w;
        }
    }
    return p;
}

CMatrix haar_moment(std::size_t d, int t) {
    CMatrix p = symmetric_projector(d, t);
    p *= cplx(1.0 / binomial(d + static_cast<std::size_t>(t) - 1, static_cast<std::size_t>(t)));
    return p;
}

MomentCheck moment_t(const RankOnePOVM &m, int t) {
    require_t(t);
    const std::size_t dim = ipow(m.dim(), t);
    MomentCheck out;
    out.lhs = CMatrix(dim, dim);
    for (std::size_t s = 0; s < m.size(); s++) {
        const CVector w = tensor_power(m.state(s), t);
        const double q = m.weight(s);
        for (std::size_t r = 0; r < dim; r++) {
            if (w[r] == cplx(0)) {
                continue;
            }
            const cplx wr = q * w[r];
            cplx *row = &out.lhs(r, 0);
            for (std::size_t c = 0; c < dim; c++) {
                row[c] += wr * std::conj(w[c]);
            }
        }
    }
    out.rhs = haar_moment(m.dim(), t);
    out.frobenius_gap = (out.lhs - out.rhs).frobenius_norm();
    return out;
}

DesignIdentityGaps design_identity_check(const RankOnePOVM &m, const CMatrix &a, const CMatrix &b,
                                         const CMatrix &c) {
    const std::size_t d = m.dim();
    for (const CMatrix *x : {&a, &b, &c}) {
        if (x->rows() != d || x->cols() != d) {
            throw DimensionError("design_identity_check: operator dimension differs from the ensemble");
        }
    }
    const double dd = static_cast<double>(d);
    CMatrix lhs1(d, d);
    CMatrix lhs2(d, d);
    for (std::size_t s = 0; s < m.size(); s++) {
        const CVector &v = m.state(s);
        const CMatrix p = projector(v);
        const cplx ea = expectation(a, v);
        const cplx eb = expectation(b, v);
        const cplx ec = expectation(c, v);
        CMatrix t1 = p;
        t1 *= m.weight(s) * ea;
        lhs1 += t1;
        CMatrix t2 = p;
        t2 *= m.weight(s) * eb * ec;
        lhs2 += t2;
    }
    const CMatrix id = CMatrix::identity(d);
    CMatrix rhs1 = id;
    rhs1 *= a.trace();
    rhs1 += a;
    rhs1 *= cplx(1 / ((dd + 1) * dd));

    CMatrix rhs2 = id;
    rhs2 *= trace_product(b, c) + b.trace() * c.trace();
    CMatrix tb = c;
    tb *= b.trace();
    CMatrix tc = b;
    tc *= c.trace();
    rhs2 += tb;
    rhs2 += tc;
    rhs2 += anticommutator(b, c);
    rhs2 *= cplx(1 / ((dd + 2) * (dd + 1) * dd));

    return {(lhs1 - rhs1).frobenius_norm(), (lhs2 - rhs2).frobenius_norm()};
}

double pair_frame_statistic(const CMatrix &u, const CMatrix &v, int t) {
    require_t(t);
    if (u.rows() != v.rows() || !u.is_square() || !v.is_square()) {
        throw DimensionError("pair_frame_statistic: unitaries must be square and of equal size");
    }
    const CMatrix w = u.adjoint() * v;
    double s = 0;
    for (const auto &z : w.data()) {
        s += std::pow(std::norm(z), t);
    }
    const double d = static_cast<double>(u.rows());
    return s / (d * d);
}

}  // namespace rmetro
