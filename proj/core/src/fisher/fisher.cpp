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

#include "rmetro/fisher/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rmetro/fisher/lowrank.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"

namespace rmetro {

namespace {

void require_rank_tol(double rank_tol) {
    if (!(rank_tol > 0)) {
        throw DomainError("rank_tol must be positive");
    }
}

void require_square_set(const CMatrix &rho, const std::vector<CMatrix> &drho) {
    if (!rho.is_square()) {
        throw DimensionError("state is not square");
    }
    for (const auto &d : drho) {
        if (d.rows() != rho.rows() || d.cols() != rho.cols()) {
            throw DimensionError("derivative shape differs from the state");
        }
    }
}

/// V^dagger A V
CMatrix in_basis(const CMatrix &a, const CMatrix &v) {
    return v.adjoint() * a * v;
}

CMatrix sld_in_eigenbasis(const SupportSpectrum &spec, const CMatrix &d_eig) {
    const std::size_t n = spec.lambda.size();
    CMatrix l(n, n);
    for (std::size_t j = 0; j < n; j++) {
        for (std::size_t k = 0; k < n; k++) {
            const double s = spec.lambda[j] + spec.lambda[k];
            if (s > 0) {
                l(j, k) = 2.0 * d_eig(j, k) / s;
            }
        }
    }
    return l;
}

}  // namespace

SupportSpectrum support_spectrum(const CMatrix &rho, double rank_tol) {
    require_rank_tol(rank_tol);
    HermEig e = eigh(rho);
    double big = 0;
    for (double x : e.eigenvalues) {
        big = std::max(big, std::abs(x));
    }
    SupportSpectrum out{e.eigenvalues, e.eigenvectors, 0};
    for (auto &x : out.lambda) {
        if (x <= rank_tol * big) {
            x = 0;
        } else {
            out.rank++;
        }
    }
    return out;
}

CMatrix sld(const CMatrix &rho, const CMatrix &drho, double rank_tol) {
    return sld_set(rho, {drho}, rank_tol).operators.front();
}

SLDSet sld_set(const CMatrix &rho, const std::vector<CMatrix> &drho, double rank_tol) {
    require_square_set(rho, drho);
    const SupportSpectrum spec = support_spectrum(rho, rank_tol);
    SLDSet out;
    out.support_rank = spec.rank;
    out.rank_tol = rank_tol;
    for (const auto &d : drho) {
        const CMatrix l = sld_in_eigenbasis(spec, in_basis(d, spec.vectors));
        out.operators.push_back(hermitian_part(spec.vectors * l * spec.vectors.adjoint()));
    }
    return out;
}

RMatrix qfim(const CMatrix &rho, const std::vector<CMatrix> &drho, double rank_tol) {
    require_square_set(rho, drho);
    const SupportSpectrum spec = support_spectrum(rho, rank_tol);
    const std::size_t m = drho.size();
    const std::size_t n = rho.rows();
    std::vector<CMatrix> de;
    for (const auto &d : drho) {
        de.push_back(in_basis(d, spec.vectors));
    }
    RMatrix j(m, m);
    for (std::size_t a = 0; a < m; a++) {
        for (std::size_t b = a; b < m; b++) {
            double s = 0;
            for (std::size_t k = 0; k < n; k++) {
                for (std::size_t l = 0; l < n; l++) {
                    const double den = spec.lambda[k] + spec.lambda[l];
                    if (den > 0) {
                        s += (de[a](k, l) * de[b](l, k)).real() / den;
                    }
                }
            }
            j(a, b) = j(b, a) = 2 * s;
        }
    }
    return j;
}

RMatrix qfim_from_sld(const CMatrix &rho, const std::vector<CMatrix> &slds) {
    const std::size_t m = slds.size();
    RMatrix j(m, m);
    for (std::size_t a = 0; a < m; a++) {
        const CMatrix rl = rho * slds[a];
        for (std::size_t b = a; b < m; b++) {
            // Tr(rho {La, Lb}) / 2 = Re Tr(rho La Lb)
            j(a, b) = j(b, a) = trace_product(rl, slds[b]).real();
        }
    }
    return j;
}

OutcomeDistribution outcome_distribution(const CMatrix &rho, const std::vector<CMatrix> &drho, const RankOnePOVM &m) {
    require_square_set(rho, drho);
    if (m.dim() != rho.rows()) {
        throw DimensionError("outcome_distribution: measurement and state dimensions differ");
    }
    const double d = static_cast<double>(m.dim());
    OutcomeDistribution out;
    out.p.resize(m.size());
    out.dp.assign(drho.size(), RVector(m.size()));
    for (std::size_t s = 0; s < m.size(); s++) {
        const double scale = m.weight(s) * d;
        out.p[s] = scale * expectation(rho, m.state(s)).real();
        for (std::size_t i = 0; i < drho.size(); i++) {
            out.dp[i][s] = scale * expectation(drho[i], m.state(s)).real();
        }
    }
    return out;
}

OutcomeDistribution outcome_distribution(const CMatrix &rho, const std::vector<CMatrix> &drho, const Povm &m) {
    require_square_set(rho, drho);
    if (m.dim() != rho.rows()) {
        throw DimensionError("outcome_distribution: measurement and state dimensions differ");
    }
    OutcomeDistribution out;
    out.p.resize(m.size());
    out.dp.assign(drho.size(), RVector(m.size()));
    for (std::size_t x = 0; x < m.size(); x++) {
        out.p[x] = trace_product(rho, m.element(x)).real();
        for (std::size_t i = 0; i < drho.size(); i++) {
            out.dp[i][x] = trace_product(drho[i], m.element(x)).real();
        }
    }
    return out;
}

RMatrix cfim_from_distribution(const OutcomeDistribution &dist, double p_floor) {
    const std::size_t m = dist.dp.size();
    RMatrix out(m, m);
    for (std::size_t x = 0; x < dist.p.size(); x++) {
        const double p = dist.p[x];
        if (p <= p_floor) {
            continue;
        }
        for (std::size_t a = 0; a < m; a++) {
            const double ga = dist.dp[a][x] / p;
            for (std::size_t b = a; b < m; b++) {
                out(a, b) += ga * dist.dp[b][x];
            }
        }
    }
    for (std::size_t a = 0; a < m; a++) {
        for (std::size_t b = 0; b < a; b++) {
            out(a, b) = out(b, a);
        }
    }
    return out;
}

RMatrix cfim(const CMatrix &rho, const std::vector<CMatrix> &drho, const RankOnePOVM &m, double p_floor) {
    if (m.completeness_error() > tol::kComplete) {
        std::ostringstream ss;
        ss << "cfim: measurement is incomplete (defect " << m.completeness_error() << ")";
        throw DomainError(ss.str());
    }
    return cfim_from_distribution(outcome_distribution(rho, drho, m), p_floor);
}

RMatrix cfim(const CMatrix &rho, const std::vector<CMatrix> &drho, const Povm &m, double p_floor) {
    return cfim_from_distribution(outcome_distribution(rho, drho, m), p_floor);
}

const char *to_string(DeviationKind kind) {
    switch (kind) {
        case DeviationKind::Plain:
            return "plain";
        case DeviationKind::LowRankUnitary:
            return "lowrank-unitary";
        case DeviationKind::LowRankGeneral:
            return "lowrank-general";
        case DeviationKind::NoisyME:
            return "noisy-ME";
    }
    return "?";
}

namespace {

std::vector<std::size_t> null_parameters(const RMatrix &f, double rank_tol) {
    SymEig e = eigh_sym(symmetrized(f));
    double big = 0;
    for (double x : e.eigenvalues) {
        big = std::max(big, std::abs(x));
    }
    std::vector<std::size_t> out;
    const std::size_t m = f.rows();
    for (std::size_t i = 0; i < m; i++) {
        double weight = 0;
        for (std::size_t k = 0; k < m; k++) {
            if (std::abs(e.eigenvalues[k]) <= rank_tol * big) {
                weight += e.eigenvectors(i, k) * e.eigenvectors(i, k);
            }
        }
        if (weight > 1e-6) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<CMatrix> combine(const RMatrix &coef, const std::vector<CMatrix> &ops) {
    std::vector<CMatrix> out;
    const std::size_t m = ops.size();
    for (std::size_t i = 0; i < m; i++) {
        CMatrix x(ops.front().rows(), ops.front().cols());
        for (std::size_t j = 0; j < m; j++) {
            if (coef(i, j) != 0) {
                x += ops[j] * coef(i, j);
            }
        }
        out.push_back(hermitian_part(x));
    }
    return out;
}

}  // namespace

DeviationObservables deviation_observables(const CMatrix &rho, const std::vector<CMatrix> &drho, DeviationKind kind,
                                           double mu, double rank_tol) {
    DeviationObservables out;
    out.kind = kind;
    std::vector<CMatrix> ops;
    if (kind == DeviationKind::Plain) {
        ops = sld_set(rho, drho, rank_tol).operators;
        out.fisher = qfim(rho, drho, rank_tol);
    } else {
        LowRankSplit split = lowrank_split(rho, drho, mu, rank_tol);
        if (kind == DeviationKind::LowRankGeneral) {
            ops = split.sld_corrected;
            out.fisher = split.j_tilde;
        } else {
            double worst = 0;
            for (double v : split.dp) {
                worst = std::max(worst, std::abs(v));
            }
            if (worst > 1e-8) {
                std::ostringstream ss;
                ss << "deviation_observables: " << to_string(kind)
                   << " requires a parameter-independent weight outside Pi (|dp| = " << worst
                   << "); use lowrank-general";
                throw DomainError(ss.str());
            }
            ops = split.sld_projected;
            out.fisher = split.j - split.j_perp * split.p;
        }
    }
    out.unidentifiable = null_parameters(out.fisher, rank_tol);
    out.X = combine(pinv_sym(out.fisher, rank_tol), ops);
    return out;
}

UnbiasednessGap local_unbiasedness_gap(const CMatrix &rho, const std::vector<CMatrix> &drho,
                                       const std::vector<CMatrix> &x) {
    UnbiasednessGap gap;
    for (std::size_t i = 0; i < x.size(); i++) {
        gap.trace_gap = std::max(gap.trace_gap, std::abs(trace_product(rho, x[i])));
        for (std::size_t j = 0; j < drho.size(); j++) {
            const double target = i == j ? 1.0 : 0.0;
            gap.derivative_gap = std::max(gap.derivative_gap, std::abs(trace_product(drho[j], x[i]) - target));
        }
    }
    return gap;
}

CMatrix fidelity_deviation_observable(const CVector &phi, const CVector &phi_perp, double f) {
    if (!(f > 0 && f < 1)) {
        throw DomainError("fidelity_deviation_observable: f must lie in (0, 1)");
    }
    const double a = 2 * f * (1 - f);
    const double b = (1 - 2 * f) * std::sqrt(f * (1 - f));
    CMatrix x = projector(phi) * a - projector(phi_perp) * a;
    x += (outer(phi, phi_perp) + outer(phi_perp, phi)) * b;
    return x;
}

RMatrix predicted_msem(const CMatrix &rho, const std::vector<CMatrix> &x, std::size_t d) {
    const std::size_t m = x.size();
    const double dd = static_cast<double>(d);
    RMatrix v(m, m);
    std::vector<double> tr(m);
    for (std::size_t i = 0; i < m; i++) {
        tr[i] = x[i].trace().real();
    }
    for (std::size_t i = 0; i < m; i++) {
        const CMatrix rx = rho * x[i];
        for (std::size_t j = i; j < m; j++) {
            const double txx = trace_product(x[i], x[j]).real();
            // Tr(rho {Xi, Xj}) = 2 Re Tr(rho Xi Xj)
            const double anti = 2 * trace_product(rx, x[j]).real();
            v(i, j) = v(j, i) = (dd + 1) / (dd + 2) * (txx + anti) - tr[i] * tr[j] / (dd + 2);
        }
    }
    return v;
}

RMatrix msem_by_enumeration(const CMatrix &rho, const std::vector<CMatrix> &x, const RankOnePOVM &m) {
    const std::size_t k = x.size();
    const double d = static_cast<double>(m.dim());
    std::vector<double> tr(k);
    for (std::size_t i = 0; i < k; i++) {
        tr[i] = x[i].trace().real();
    }
    RMatrix v(k, k);
    std::vector<double> shot(k);
    for (std::size_t s = 0; s < m.size(); s++) {
        const CVector &st = m.state(s);
        const double prob = m.weight(s) * d * expectation(rho, st).real();
        for (std::size_t i = 0; i < k; i++) {
            shot[i] = (d + 1) * expectation(x[i], st).real() - tr[i];
        }
        for (std::size_t i = 0; i < k; i++) {
            for (std::size_t j = i; j < k; j++) {
                v(i, j) += prob * shot[i] * shot[j];
            }
        }
    }
    for (std::size_t i = 0; i < k; i++) {
        for (std::size_t j = 0; j < i; j++) {
            v(i, j) = v(j, i);
        }
    }
    return v;
}

RMatrix sld_gram(const std::vector<CMatrix> &slds) {
    const std::size_t m = slds.size();
    RMatrix k(m, m);
    for (std::size_t a = 0; a < m; a++) {
        for (std::size_t b = a; b < m; b++) {
            k(a, b) = k(b, a) = trace_product(slds[a], slds[b]).real();
        }
    }
    return k;
}

double support_condition_number(const CMatrix &rho, double rank_tol) {
    const SupportSpectrum spec = support_spectrum(rho, rank_tol);
    double lo = 0;
    double hi = 0;
    for (double x : spec.lambda) {
        if (x > 0) {
            lo = lo == 0 ? x : std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    return hi / lo;
}

OptimalEstimator optimal_estimator(const OutcomeDistribution &dist, double p_floor) {
    const RMatrix i = cfim_from_distribution(dist, p_floor);
    OptimalEstimator out;
    out.inverse_cfim = pinv_sym(i);
    out.p = dist.p;
    const std::size_t m = dist.dp.size();
    const std::size_t k = dist.p.size();
    out.alpha = RMatrix(m, k);
    for (std::size_t x = 0; x < k; x++) {
        if (dist.p[x] <= p_floor) {
            continue;
        }
        for (std::size_t a = 0; a < m; a++) {
            double s = 0;
            for (std::size_t b = 0; b < m; b++) {
                s += out.inverse_cfim(a, b) * dist.dp[b][x];
            }
            out.alpha(a, x) = s / dist.p[x];
        }
    }
    return out;
}

}  // namespace rmetro
