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

#include "rmetro/states/families.hpp"

#include <cmath>
#include <sstream>

#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/random.hpp"

namespace rmetro {

namespace {

std::string indexed(const char *base, std::size_t k) {
    return std::string(base) + "[" + std::to_string(k) + "]";
}

bool outside(double x, double lo, double hi, bool open, double margin) {
    if (open) {
        return !(x - margin > lo && x + margin < hi);
    }
    return !(x >= lo && x <= hi);
}

}  // namespace

// ---------------------------------------------------------------- phase qubit

CVector PhaseQubitFamily::ket(const RVector &theta) const {
    const double s = 1 / std::sqrt(2.0);
    return {s, s * std::polar(1.0, theta[0])};
}

std::vector<CVector> PhaseQubitFamily::ket_derivs(const RVector &theta) const {
    const double s = 1 / std::sqrt(2.0);
    return {{0, s * cplx(0, 1) * std::polar(1.0, theta[0])}};
}

// -------------------------------------------------------------- fidelity pure

FidelityPureFamily::FidelityPureFamily(CVector target, std::size_t n_angles)
    : target_(normalized(target)), n_angles_(n_angles) {
    const std::size_t d = target_.size();
    if (d < 2) {
        throw DomainError("fidelity_pure: dimension must be at least 2");
    }
    if (n_angles > d - 2) {
        throw DomainError("fidelity_pure: at most d-2 angles are available");
    }
    // Gram-Schmidt of the computational basis against the target.
    std::vector<CVector> basis{target_};
    for (std::size_t k = 0; k < d && basis.size() < d; k++) {
        CVector v = basis_vector(d, k);
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : basis) {
                const cplx c = inner(b, v);
                for (std::size_t r = 0; r < d; r++) {
                    v[r] -= c * b[r];
                }
            }
        }
        if (norm(v) > 1e-6) {
            basis.push_back(normalized(v));
        }
    }
    complement_.assign(basis.begin() + 1, basis.end());
}

FidelityPureFamily::FidelityPureFamily(CVector target) : FidelityPureFamily(target, target.size() - 2) {
}

std::optional<std::string> FidelityPureFamily::domain_violation(const RVector &theta, bool, double margin) const {
    // The pure fidelity chart is open in f for evaluation as well.
    if (outside(theta[0], 0, 1, true, margin)) {
        return "f";
    }
    for (std::size_t k = 1; k < theta.size(); k++) {
        if (!std::isfinite(theta[k])) {
            return indexed("g", k - 1);
        }
    }
    return std::nullopt;
}

CVector FidelityPureFamily::perp(const RVector &angles) const {
    // Hyperspherical coordinates on the unit sphere of span{complement_[0..k]}.
    const std::size_t k = angles.size();
    CVector out(dim());
    double prefix = 1;
    for (std::size_t j = 0; j <= k; j++) {
        const double coef = j < k ? prefix * std::cos(angles[j]) : prefix;
        for (std::size_t r = 0; r < dim(); r++) {
            out[r] += coef * complement_[j][r];
        }
        if (j < k) {
            prefix *= std::sin(angles[j]);
        }
    }
    return out;
}

CVector FidelityPureFamily::ket(const RVector &theta) const {
    const double f = theta[0];
    const CVector p = perp(RVector(theta.begin() + 1, theta.end()));
    CVector out(dim());
    for (std::size_t r = 0; r < dim(); r++) {
        out[r] = std::sqrt(f) * target_[r] + std::sqrt(1 - f) * p[r];
    }
    return out;
}

std::vector<CVector> FidelityPureFamily::ket_derivs(const RVector &theta) const {
    const double f = theta[0];
    const RVector angles(theta.begin() + 1, theta.end());
    const std::size_t k = angles.size();
    const CVector p = perp(angles);
    std::vector<CVector> out;

    CVector df(dim());
    for (std::size_t r = 0; r < dim(); r++) {
        df[r] = target_[r] / (2 * std::sqrt(f)) - p[r] / (2 * std::sqrt(1 - f));
    }
    out.push_back(df);

    for (std::size_t a = 0; a < k; a++) {
        // d/d angle_a of the hyperspherical coefficient vector.
        CVector dv(dim());
        double prefix = 1;
        for (std::size_t j = 0; j <= k; j++) {
            double coef;
            if (j < a) {
                coef = 0;
            } else if (j == a) {
                coef = -prefix * std::sin(angles[j]);
            } else {
                // prefix contains sin(angles[a]); replace it by its derivative.
                double pre = 1;
                for (std::size_t i = 0; i < j; i++) {
                    pre *= i == a ? std::cos(angles[i]) : std::sin(angles[i]);
                }
                coef = j < k ? pre * std::cos(angles[j]) : pre;
            }
            if (j < k) {
                prefix *= std::sin(angles[j]);
            }
            for (std::size_t r = 0; r < dim(); r++) {
                dv[r] += std::sqrt(1 - f) * coef * complement_[j][r];
            }
        }
        out.push_back(dv);
    }
    return out;
}

// -------------------------------------------------------------------- GHZ mix

GHZMixFamily::GHZMixFamily(std::size_t n) : n_(n) {
    if (n < 2 || n > 12) {
        throw DomainError("ghz_mix: qubit count must be in [2, 12]");
    }
}

RVector GHZMixFamily::weights(const RVector &phi) {
    RVector w(phi.size() + 1);
    double rest = 1;
    for (std::size_t i = 0; i < phi.size(); i++) {
        w[i + 1] = phi[i];
        rest -= phi[i];
    }
    w[0] = rest;
    return w;
}

std::optional<std::string> GHZMixFamily::domain_violation(const RVector &theta, bool open, double margin) const {
    for (std::size_t i = 0; i < theta.size(); i++) {
        if (outside(theta[i], 0, 1, open, margin)) {
            return indexed("phi", i + 1);
        }
    }
    double phi0 = weights(theta)[0];
    const double shrink = margin * static_cast<double>(theta.size());
    if (open ? !(phi0 - shrink > 0) : phi0 < -1e-15) {
        return std::string("phi[0]");
    }
    return std::nullopt;
}

CVector GHZMixFamily::basis_state(std::size_t k) const {
    if (k > n_) {
        throw DomainError("ghz_mix: basis index out of range");
    }
    const std::size_t d = dim();
    const std::size_t all = d - 1;
    std::size_t flip = 0;
    if (k > 0) {
        // Qubit q is bit (n-1-q) of the basis index.
        flip = std::size_t{1} << (n_ - k);
    }
    CVector v(d);
    const double s = 1 / std::sqrt(2.0);
    v[flip] += s;
    v[all ^ flip] += s;
    return v;
}

CVector GHZMixFamily::ket(const RVector &theta) const {
    const RVector w = weights(theta);
    CVector out(dim());
    for (std::size_t k = 0; k <= n_; k++) {
        const double a = std::sqrt(std::max(0.0, w[k]));
        const CVector b = basis_state(k);
        for (std::size_t r = 0; r < dim(); r++) {
            out[r] += a * b[r];
        }
    }
    return out;
}

std::vector<CVector> GHZMixFamily::ket_derivs(const RVector &theta) const {
    const RVector w = weights(theta);
    const CVector ghz = basis_state(0);
    std::vector<CVector> out;
    for (std::size_t i = 1; i <= n_; i++) {
        const CVector b = basis_state(i);
        CVector v(dim());
        for (std::size_t r = 0; r < dim(); r++) {
            v[r] = b[r] / (2 * std::sqrt(w[i])) - ghz[r] / (2 * std::sqrt(w[0]));
        }
        out.push_back(v);
    }
    return out;
}

double ghz_fidelity(const RVector &phi_target, const RVector &phi_state) {
    if (phi_target.size() != phi_state.size()) {
        throw DimensionError("ghz_fidelity: parameter vectors differ in length");
    }
    const RVector a = GHZMixFamily::weights(phi_target);
    const RVector b = GHZMixFamily::weights(phi_state);
    double s = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        if (a[k] < -1e-15 || b[k] < -1e-15) {
            throw DomainError("ghz_fidelity: negative component weight at index " + std::to_string(k));
        }
        s += std::sqrt(std::max(0.0, a[k]) * std::max(0.0, b[k]));
    }
    return s * s;
}

// ------------------------------------------------------- depolarized fidelity

DepolarizedFidelityFamily::DepolarizedFidelityFamily(CVector target) : target_(normalized(target)) {
    if (target_.size() < 2) {
        throw DomainError("depolarized_fidelity: dimension must be at least 2");
    }
}

std::optional<std::string> DepolarizedFidelityFamily::domain_violation(const RVector &theta, bool open,
                                                                       double margin) const {
    if (outside(theta[0], 0, 1, open, margin)) {
        return std::string("f");
    }
    return std::nullopt;
}

CMatrix DepolarizedFidelityFamily::eval_unchecked(const RVector &theta) const {
    const double f = theta[0];
    const double d = static_cast<double>(dim());
    const CMatrix p = projector(target_);
    CMatrix rho = CMatrix::identity(dim()) - p;
    rho *= cplx((1 - f) / (d - 1));
    rho += p * f;
    return rho;
}

std::vector<CMatrix> DepolarizedFidelityFamily::analytic_derivs(const RVector &) const {
    const double d = static_cast<double>(dim());
    const CMatrix p = projector(target_);
    CMatrix rest = CMatrix::identity(dim()) - p;
    rest *= cplx(1 / (d - 1));
    return {p - rest};
}

// ------------------------------------------------------------ stabilizer mix

StabilizerMixFamily::StabilizerMixFamily(std::size_t n, std::vector<CMatrix> paulis)
    : n_(n), paulis_(std::move(paulis)) {
    for (const auto &p : paulis_) {
        if (p.rows() != dim() || p.cols() != dim()) {
            throw DimensionError("stabilizer_mix: Pauli operator has the wrong dimension");
        }
    }
}

StabilizerMixFamily::StabilizerMixFamily(std::size_t n) : n_(n) {
    const std::size_t d = dim();
    // Z-strings indexed by their support mask.
    for (std::size_t mask = 1; mask < d; mask++) {
        CMatrix z(d, d);
        for (std::size_t x = 0; x < d; x++) {
            z(x, x) = (__builtin_popcountll(mask & x) & 1) ? -1.0 : 1.0;
        }
        paulis_.push_back(z);
    }
}

std::optional<std::string> StabilizerMixFamily::domain_violation(const RVector &theta, bool open,
                                                                 double margin) const {
    for (double t : theta) {
        if (!std::isfinite(t)) {
            return std::string("theta");
        }
    }
    // Moving one coordinate by h shifts every eigenvalue by at most h/d.
    const double lmin = lambda_min(eval_unchecked(theta));
    const double slack = margin * static_cast<double>(theta.size()) / static_cast<double>(dim());
    const bool ok = open ? lmin - slack > 0 : lmin >= -tol::kEig;
    if (ok) {
        return std::nullopt;
    }
    return std::string("theta");
}

CMatrix StabilizerMixFamily::eval_unchecked(const RVector &theta) const {
    CMatrix rho = CMatrix::identity(dim());
    for (std::size_t i = 0; i < paulis_.size(); i++) {
        rho += paulis_[i] * theta[i];
    }
    rho *= cplx(1.0 / static_cast<double>(dim()));
    return rho;
}

std::vector<CMatrix> StabilizerMixFamily::analytic_derivs(const RVector &) const {
    std::vector<CMatrix> out;
    for (const auto &p : paulis_) {
        out.push_back(p * (1.0 / static_cast<double>(dim())));
    }
    return out;
}

// ---------------------------------------------------------------- random pure

RandomPureFamily::RandomPureFamily(std::size_t d, std::size_t m, uint64_t seed) {
    Rng rng(seed, 0x70757265);
    base_ = random_state(d, rng);
    for (std::size_t i = 0; i < m; i++) {
        dirs_.push_back(gaussian_vector(d, rng));
    }
}

CVector RandomPureFamily::ket(const RVector &theta) const {
    CVector v = base_;
    for (std::size_t i = 0; i < dirs_.size(); i++) {
        for (std::size_t r = 0; r < v.size(); r++) {
            v[r] += theta[i] * dirs_[i][r];
        }
    }
    return normalized(v);
}

std::vector<CVector> RandomPureFamily::ket_derivs(const RVector &theta) const {
    CVector v = base_;
    for (std::size_t i = 0; i < dirs_.size(); i++) {
        for (std::size_t r = 0; r < v.size(); r++) {
            v[r] += theta[i] * dirs_[i][r];
        }
    }
    const double n = norm(v);
    std::vector<CVector> out;
    for (const auto &dir : dirs_) {
        const double dn = inner(v, dir).real() / n;
        CVector dv(v.size());
        for (std::size_t r = 0; r < v.size(); r++) {
            dv[r] = dir[r] / n - v[r] * dn / (n * n);
        }
        out.push_back(dv);
    }
    return out;
}

// --------------------------------------------------------------- random mixed

RandomMixedFamily::RandomMixedFamily(std::size_t d, std::size_t rank, std::size_t m, uint64_t seed, double spread) {
    if (rank == 0 || rank > d) {
        throw DomainError("random_mixed: rank must be in [1, d]");
    }
    Rng rng(seed, 0x6D697865);
    const CMatrix u = random_unitary(d, rng);
    base_ = CMatrix(d, rank);
    for (std::size_t k = 0; k < rank; k++) {
        const double w = std::sqrt(std::pow(spread, static_cast<double>(k)));
        for (std::size_t r = 0; r < d; r++) {
            base_(r, k) = u(r, k) * w;
        }
    }
    for (std::size_t i = 0; i < m; i++) {
        CMatrix w(d, rank);
        for (auto &x : w.data()) {
            x = rng.complex_normal();
        }
        dirs_.push_back(w);
    }
}

CMatrix RandomMixedFamily::factor(const RVector &theta) const {
    CMatrix w = base_;
    for (std::size_t i = 0; i < dirs_.size(); i++) {
        w += dirs_[i] * cplx(theta[i]);
    }
    return w;
}

CMatrix RandomMixedFamily::eval_unchecked(const RVector &theta) const {
    const CMatrix w = factor(theta);
    CMatrix rho = w * w.adjoint();
    rho *= cplx(1 / rho.trace().real());
    return hermitian_part(rho);
}

std::vector<CMatrix> RandomMixedFamily::analytic_derivs(const RVector &theta) const {
    const CMatrix w = factor(theta);
    const CMatrix raw = w * w.adjoint();
    const double t = raw.trace().real();
    std::vector<CMatrix> out;
    for (const auto &dir : dirs_) {
        const CMatrix draw = dir * w.adjoint() + w * dir.adjoint();
        const double dt = draw.trace().real();
        CMatrix d = draw * (1 / t) - raw * (dt / (t * t));
        out.push_back(hermitian_part(d));
    }
    return out;
}

std::size_t rank_manifold_dimension(std::size_t d, std::size_t r) {
    return r * (2 * d - r) - 1;
}

std::vector<CMatrix> full_parameter_directions(const CMatrix &eigvecs, std::size_t r, FullParamCase which) {
    const std::size_t d = eigvecs.rows();
    if (!eigvecs.is_square() || r == 0 || r > d) {
        throw DomainError("full_parameter_directions: need a square eigenvector matrix and 1 <= r <= d");
    }
    const bool inside = which != FullParamCase::OffSupport;
    const bool outside = which != FullParamCase::Support;
    std::vector<CVector> psi;
    for (std::size_t k = 0; k < d; k++) {
        psi.push_back(eigvecs.column(k));
    }
    std::vector<CMatrix> out;
    for (std::size_t k = 0; k < r; k++) {
        for (std::size_t l = k + 1; l < d; l++) {
            if ((l < r && !inside) || (l >= r && !outside)) {
                continue;
            }
            const CMatrix kl = outer(psi[k], psi[l]);
            out.push_back(kl + kl.adjoint());
            const CMatrix ikl = kl * cplx(0, 1);
            out.push_back(ikl + ikl.adjoint());
        }
    }
    if (inside) {
        for (std::size_t b = 0; b + 1 < r; b++) {
            out.push_back(projector(psi[b]) - projector(psi[b + 1]));
        }
    }
    return out;
}

}  // namespace rmetro
