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

#include "rmetro/qmath/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_sq(const CMatrix &a) {
    double s = 0;
    for (std::size_t p = 0; p < a.rows(); p++) {
        for (std::size_t q = p + 1; q < a.cols(); q++) {
            s += std::norm(a(p, q));
        }
    }
    return 2 * s;
}

/// One two-sided rotation zeroing a(p, q). The rotation is W = D R where D
/// removes the phase of a(p, q) and R is the real Jacobi rotation.
void rotate(CMatrix &a, CMatrix &v, std::size_t p, std::size_t q) {
    const cplx g = a(p, q);
    const double ag = std::abs(g);
    const cplx e = g / ag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double zeta = (aqq - app) / (2 * ag);
    const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
    const double c = 1 / std::sqrt(1 + t * t);
    const double s = t * c;
    const cplx ce = std::conj(e);
    const std::size_t n = a.rows();

    for (std::size_t k = 0; k < n; k++) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = c * akp - s * ce * akq;
        a(k, q) = s * akp + c * ce * akq;
    }
    for (std::size_t k = 0; k < n; k++) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = c * apk - s * e * aqk;
        a(q, k) = s * apk + c * e * aqk;
    }
    a(p, q) = 0;
    a(q, p) = 0;
    a(p, p) = app - t * ag;
    a(q, q) = aqq + t * ag;

    for (std::size_t k = 0; k < n; k++) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = c * vkp - s * ce * vkq;
        v(k, q) = s * vkp + c * ce * vkq;
    }
}

}  // namespace

CMatrix HermEig::apply(const std::function<double(double)> &f) const {
    const std::size_t n = eigenvalues.size();
    CMatrix out(n, n);
    for (std::size_t k = 0; k < n; k++) {
        const double fk = f(eigenvalues[k]);
        if (fk == 0) {
            continue;
        }
        for (std::size_t r = 0; r < n; r++) {
            const cplx vr = eigenvectors(r, k) * fk;
            for (std::size_t c = 0; c < n; c++) {
                out(r, c) += vr * std::conj(eigenvectors(c, k));
            }
        }
    }
    return out;
}

RMatrix SymEig::apply(const std::function<double(double)> &f) const {
    const std::size_t n = eigenvalues.size();
    RMatrix out(n, n);
    for (std::size_t k = 0; k < n; k++) {
        const double fk = f(eigenvalues[k]);
        if (fk == 0) {
            continue;
        }
        for (std::size_t r = 0; r < n; r++) {
            for (std::size_t c = 0; c < n; c++) {
                out(r, c) += eigenvectors(r, k) * fk * eigenvectors(c, k);
            }
        }
    }
    return symmetrized(out);
}

HermEig eigh(const CMatrix &h) {
    if (!h.is_square()) {
        throw DimensionError("eigh: matrix is not square");
    }
    const std::size_t n = h.rows();
    const double scale = std::max(1.0, h.frobenius_norm());
    const double gap = hermiticity_gap(h);
    if (!(gap <= tol::kEig * scale)) {
        double worst = 0;
        for (std::size_t r = 0; r < n; r++) {
            for (std::size_t c = 0; c < n; c++) {
                worst = std::max(worst, std::abs(h(r, c) - std::conj(h(c, r))));
            }
        }
        std::ostringstream ss;
        ss << "eigh: input is not Hermitian (max asymmetry " << worst << ")";
        throw NumericalError(ss.str());
    }

    CMatrix a = hermitian_part(h);
    for (std::size_t k = 0; k < n; k++) {
        a(k, k) = a(k, k).real();
    }
    CMatrix v = CMatrix::identity(n);
    const double target = 1e-14 * scale;
    int sweep = 0;
    while (std::sqrt(off_diagonal_sq(a)) > target) {
        if (sweep >= kMaxSweeps) {
            std::ostringstream ss;
            ss << "eigh: Jacobi sweeps did not converge after " << sweep << " iterations";
            throw NumericalError(ss.str());
        }
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                const double apq = std::abs(a(p, q));
                if (apq <= 1e-300) {
                    continue;
                }
                // Entries below the resolution of both diagonal entries are dropped.
                if (sweep > 3 && std::abs(a(p, p).real()) + 100 * apq == std::abs(a(p, p).real()) &&
                    std::abs(a(q, q).real()) + 100 * apq == std::abs(a(q, q).real())) {
                    a(p, q) = 0;
                    a(q, p) = 0;
                    continue;
                }
                rotate(a, v, p, q);
            }
        }
        sweep++;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    HermEig out{RVector(n), CMatrix(n, n)};
    for (std::size_t k = 0; k < n; k++) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; r++) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

SymEig eigh_sym(const RMatrix &s) {
    HermEig e = eigh(to_complex(s));
    const std::size_t n = s.rows();
    SymEig out{e.eigenvalues, RMatrix(n, n)};
    // For a real input every rotation phase is +-1, so the eigenvectors are
    // real up to a per-column phase. Remove it before taking real parts.
    for (std::size_t k = 0; k < n; k++) {
        std::size_t piv = 0;
        for (std::size_t r = 1; r < n; r++) {
            if (std::abs(e.eigenvectors(r, k)) > std::abs(e.eigenvectors(piv, k))) {
                piv = r;
            }
        }
        const cplx ph = std::conj(e.eigenvectors(piv, k)) / std::abs(e.eigenvectors(piv, k));
        double nrm = 0;
        for (std::size_t r = 0; r < n; r++) {
            out.eigenvectors(r, k) = (e.eigenvectors(r, k) * ph).real();
            nrm += out.eigenvectors(r, k) * out.eigenvectors(r, k);
        }
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < n; r++) {
            out.eigenvectors(r, k) /= nrm;
        }
    }
    return out;
}

double lambda_min(const CMatrix &h) {
    return eigh(h).eigenvalues.front();
}

double lambda_min(const RMatrix &s) {
    return eigh_sym(s).eigenvalues.front();
}

double lambda_max(const RMatrix &s) {
    return eigh_sym(s).eigenvalues.back();
}

bool psd_ge(const CMatrix &a, const CMatrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("psd_ge: dimension mismatch");
    }
    return lambda_min(a - b) >= -tol;
}

bool psd_ge(const RMatrix &a, const RMatrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("psd_ge: dimension mismatch");
    }
    return lambda_min(symmetrized(a - b)) >= -tol;
}

RMatrix pinv_sym(const RMatrix &s, double rank_tol) {
    if (!s.is_square()) {
        throw DimensionError("pinv_sym: matrix is not square");
    }
    if (s.rows() == 0) {
        return s;
    }
    SymEig e = eigh_sym(symmetrized(s));
    double big = 0;
    for (double x : e.eigenvalues) {
        big = std::max(big, std::abs(x));
    }
    const double cut = rank_tol * big;
    return e.apply([&](double x) { return std::abs(x) > cut ? 1 / x : 0.0; });
}

std::size_t numerical_rank(const RMatrix &s, double rank_tol) {
    SymEig e = eigh_sym(symmetrized(s));
    double big = 0;
    for (double x : e.eigenvalues) {
        big = std::max(big, std::abs(x));
    }
    std::size_t r = 0;
    for (double x : e.eigenvalues) {
        if (std::abs(x) > rank_tol * big) {
            r++;
        }
    }
    return r;
}

RMatrix inv_sqrt_sym(const RMatrix &s) {
    SymEig e = eigh_sym(symmetrized(s));
    const double big = std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
    if (e.eigenvalues.front() <= tol::kRank * big) {
        std::ostringstream ss;
        ss << "inv_sqrt_sym: matrix is not positive definite (lambda_min " << e.eigenvalues.front() << ")";
        throw NumericalError(ss.str());
    }
    return e.apply([](double x) { return 1 / std::sqrt(x); });
}

CMatrix inv_sqrt_psd(const CMatrix &a) {
    HermEig e = eigh(a);
    const double big = std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
    if (e.eigenvalues.front() <= tol::kRank * big) {
        throw NumericalError("inv_sqrt_psd: matrix is not positive definite");
    }
    return e.apply([](double x) { return 1 / std::sqrt(x); });
}

CMatrix expm(const CMatrix &a) {
    if (!a.is_square()) {
        throw DimensionError("expm: matrix is not square");
    }
    const std::size_t n = a.rows();
    double nrm = a.frobenius_norm();
    int squarings = 0;
    while (nrm > 0.25) {
        nrm /= 2;
        squarings++;
    }
    CMatrix scaled = a * std::ldexp(1.0, -squarings);
    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 20; k++) {
        term = term * scaled;
        term *= cplx(1.0 / k);
        result += term;
        if (term.frobenius_norm() < 1e-18) {
            break;
        }
    }
    for (int k = 0; k < squarings; k++) {
        result = result * result;
    }
    return result;
}

}  // namespace rmetro
