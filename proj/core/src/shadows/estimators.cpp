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


#include "rmetro/shadows/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

namespace {

void require_nonempty(std::span<const CVector> snapshots, const char *who) {
    if (snapshots.empty()) {
        throw DomainError(std::string(who) + ": no snapshots");
    }
}

// Pairwise summation keeps the reduction order fixed and the error small.
double pairwise_sum(const double *v, std::size_t n) {
    if (n <= 16) {
        double s = 0;
        for (std::size_t i = 0; i < n; i++) {
            s += v[i];
        }
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double mean(const std::vector<double> &v) {
    return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

}  // namespace

double snapshot_overlap(const CVector &s, const CVector &phi) {
    if (s.size() != phi.size()) {
        throw DimensionError("snapshot_overlap: dimension mismatch");
    }
    return (static_cast<double>(s.size()) + 1) * std::norm(inner(phi, s)) - 1;
}

double standard_shadow_overlap(std::span<const CVector> snapshots, const CVector &phi) {
    require_nonempty(snapshots, "standard_shadow_overlap");
    std::vector<double> v;
    v.reserve(snapshots.size());
    for (const auto &s : snapshots) {
        v.push_back(snapshot_overlap(s, phi));
    }
    return mean(v);
}

double local_shadow_term(const CVector &s, const CMatrix &x, double trace_x) {
    if (s.size() != x.rows()) {
        throw DimensionError("local_shadow_term: dimension mismatch");
    }
    return (static_cast<double>(s.size()) + 1) * expectation(x, s).real() - trace_x;
}

double local_shadow_estimate(std::span<const CVector> snapshots, const CMatrix &x, double theta0) {
    require_nonempty(snapshots, "local_shadow_estimate");
    const double tr = x.trace().real();
    std::vector<double> v;
    v.reserve(snapshots.size());
    for (const auto &s : snapshots) {
        v.push_back(local_shadow_term(s, x, tr));
    }
    return theta0 + mean(v);
}

Algorithm1Result algorithm1_fidelity(std::span<const CVector> snapshots, const CVector &target,
                                     const GHZMixFamily &family, const Algorithm1Options &options) {
    require_nonempty(snapshots, "algorithm1_fidelity");
    if (!(options.cutoff > 0)) {
        throw DomainError("algorithm1_fidelity: cutoff must be positive");
    }
    const std::size_t d = family.dim();
    const std::size_t n = family.qubits();
    if (target.size() != d) {
        throw DimensionError("algorithm1_fidelity: target dimension differs from the family");
    }
    const CVector phi = normalized(target);
    const double eps = options.eps;
    Algorithm1Result out;

    // Coarse weights from standard overlaps with the bit-flipped GHZ states.
    out.phi_coarse.resize(n);
    double total = 0;
    for (std::size_t i = 0; i < n; i++) {
        double w = standard_shadow_overlap(snapshots, family.basis_state(i + 1));
        if (w < 0) {
            w = 0;
            out.clamped_coarse = true;
        }
        out.phi_coarse[i] = w;
        total += w;
    }
    if (total > 1 - eps) {
        for (auto &w : out.phi_coarse) {
            w *= (1 - eps) / total;
        }
        out.clamped_coarse = true;
    }
    const CVector psi = family.ket(out.phi_coarse);

    // Component of the coarse state orthogonal to the target, phase-aligned so
    // that psi = sqrt(f)|phi> + sqrt(1-f)|phi_perp>.
    const cplx a = inner(phi, psi);
    const cplx ph = std::abs(a) > 0 ? std::conj(a) / std::abs(a) : cplx(1, 0);
    CVector perp(d);
    for (std::size_t k = 0; k < d; k++) {
        perp[k] = ph * (psi[k] - a * phi[k]);
    }
    if (norm(perp) < 1e-12) {
        out.degenerate_direction = true;
        for (std::size_t k = 1; k <= n && norm(perp) < 1e-6; k++) {
            const CVector b = family.basis_state(k);
            const cplx c = inner(phi, b);
            for (std::size_t j = 0; j < d; j++) {
                perp[j] = b[j] - c * phi[j];
            }
        }
    }
    perp = normalized(perp);

    double f = std::norm(a);
    if (f < eps || f > 1 - eps) {
        f = std::clamp(f, eps, 1 - eps);
        out.clamped_coarse = true;
    }
    out.f_coarse = f;

    // <phi|s> and <perp|s> once; every X_f lives in their span and is traceless.
    std::vector<cplx> alpha;
    std::vector<cplx> beta;
    alpha.reserve(snapshots.size());
    beta.reserve(snapshots.size());
    for (const auto &s : snapshots) {
        alpha.push_back(inner(phi, s));
        beta.push_back(inner(perp, s));
    }
    const double scale = static_cast<double>(d) + 1;
    std::vector<double> terms(snapshots.size());
    for (std::size_t it = 0; it < options.max_iter; it++) {
        const double ca = 2 * f * (1 - f);
        const double cb = (1 - 2 * f) * std::sqrt(f * (1 - f));
        for (std::size_t s = 0; s < snapshots.size(); s++) {
            const double diag = std::norm(alpha[s]) - std::norm(beta[s]);
            const double off = 2 * (std::conj(alpha[s]) * beta[s]).real();
            terms[s] = scale * (ca * diag + cb * off);
        }
        const double delta = mean(terms);
        f += delta;
        if (f < eps || f > 1 - eps) {
            f = std::clamp(f, eps, 1 - eps);
            out.clamped_iterate = true;
        }
        out.trace.push_back(f);
        out.iterations = it + 1;
        if (std::abs(delta) < options.cutoff) {
            out.converged = true;
            break;
        }
    }
    out.f_hat = f;
    return out;
}

double local_fidelity_variance(std::size_t d, double f) {
    const double x = static_cast<double>(d);
    return 4 * (x + 1) / (x + 2) * f * (1 - f);
}

double standard_fidelity_variance(std::size_t d, double f) {
    const double x = static_cast<double>(d);
    return 2 * (x + 1) * (1 + 2 * f) / (x + 2) - (1 + f) * (1 + f);
}

}  // namespace rmetro
