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


#include "rmetro/fisher/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"

namespace rmetro {

namespace {

void require_same_shape(const RMatrix &a, const RMatrix &b, const char *who) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(who) + ": matrices must be square and conformable");
    }
}

RMatrix checked_inverse(const RMatrix &s, const char *who) {
    if (numerical_rank(s) < s.rows()) {
        throw NumericalError(std::string(who) + ": matrix is singular");
    }
    return pinv_sym(s);
}

double trace_of_product(const RMatrix &a, const RMatrix &b) {
    double t = 0;
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            t += a(r, c) * b(c, r);
        }
    }
    return t;
}

bool le_with_slack(double a, double b) {
    return a <= b + 1e-9 * std::max(1.0, std::abs(b));
}

}  // namespace

GillMassarResult gill_massar(const RMatrix &j, const RMatrix &i, std::size_t d, GMVariant variant, std::size_t r) {
    require_same_shape(j, i, "gill_massar");
    GillMassarResult out;
    out.gm = trace_of_product(checked_inverse(j, "gill_massar"), i);
    switch (variant) {
        case GMVariant::Full:
            out.bound = static_cast<double>(d) - 1;
            break;
        case GMVariant::Support:
            if (r < 1 || r > d) {
                throw DomainError("gill_massar: support variant needs 1 <= r <= d");
            }
            out.bound = static_cast<double>(r) - 1;
            break;
        case GMVariant::OffDiag:
            if (r < 1 || r > d) {
                throw DomainError("gill_massar: off-diagonal variant needs 1 <= r <= d");
            }
            out.bound = static_cast<double>(d - r);
            break;
    }
    out.ok = le_with_slack(out.gm, out.bound);
    return out;
}

double near_optimality_ratio(const RMatrix &i, const RMatrix &j) {
    require_same_shape(j, i, "near_optimality_ratio");
    if (numerical_rank(j) < j.rows()) {
        throw NumericalError("near_optimality_ratio: J is singular");
    }
    const RMatrix w = inv_sqrt_sym(j);
    return lambda_min(symmetrized(w * i * w));
}

double near_optimality_ratio_on_range(const RMatrix &i, const RMatrix &j, double rank_tol) {
    require_same_shape(j, i, "near_optimality_ratio_on_range");
    const SymEig e = eigh_sym(j);
    const double top = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < e.eigenvalues.size(); k++) {
        if (e.eigenvalues[k] > rank_tol * std::max(top, 1.0)) {
            keep.push_back(k);
        }
    }
    if (keep.empty()) {
        throw NumericalError("near_optimality_ratio_on_range: J is zero");
    }
    const std::size_t m = j.rows();
    const std::size_t r = keep.size();
    // Columns v_k / sqrt(lambda_k) of the range of J.
    RMatrix w(m, r);
    for (std::size_t c = 0; c < r; c++) {
        const double s = 1 / std::sqrt(e.eigenvalues[keep[c]]);
        for (std::size_t a = 0; a < m; a++) {
            w(a, c) = e.eigenvectors(a, keep[c]) * s;
        }
    }
    return lambda_min(symmetrized(w.transpose() * i * w));
}

WeakNearOptimalityResult weak_near_optimality_check(const RMatrix &i, const RMatrix &j, std::size_t m, double c1,
                                                    double c2, double reference_gm_bound) {
    require_same_shape(j, i, "weak_near_optimality_check");
    WeakNearOptimalityResult out;
    const double mm = static_cast<double>(m);
    out.trace_limit = c1 * mm * mm / reference_gm_bound;
    if (numerical_rank(i) < i.rows()) {
        out.identifiable = false;
        return out;
    }
    out.trace_j_iinv = trace_of_product(j, pinv_sym(i));
    out.trace_ok = le_with_slack(out.trace_j_iinv, out.trace_limit);
    const double mean = trace_of_product(checked_inverse(j, "weak_near_optimality_check"), i) / mm;
    out.spread = near_optimality_ratio(i, j) / mean;
    out.spread_ok = out.spread >= c2 - 1e-9;
    out.ok = out.trace_ok && out.spread_ok;
    return out;
}

double wmse(const RMatrix &w, const RMatrix &v) {
    require_same_shape(w, v, "wmse");
    return trace_of_product(w, v);
}

double design_pure_bound(std::size_t d) {
    const double x = static_cast<double>(d);
    return (x + 2) / (4 * (x + 1));
}

double lowrank_unitary_bound(std::size_t d, double mu, double c) {
    const double x = static_cast<double>(d);
    return (x + 2) / (x + 1) * mu * c / (2 * mu + 2);
}

double lowrank_general_bound(std::size_t d, double mu, double c) {
    const double x = static_cast<double>(d);
    return (x + 2) / (x + 1) * mu * c * c / (2 * mu * c + 5);
}

double well_conditioned_trace_bound(std::size_t d, std::size_t r, double kappa, std::size_t m) {
    const double x = static_cast<double>(d);
    return 2 * (x + 1) * (1 + static_cast<double>(r) * kappa) * static_cast<double>(m) / (x + 2);
}

}  // namespace rmetro
