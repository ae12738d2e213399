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

#ifndef RMETRO_QMATH_LINALG_HPP
#define RMETRO_QMATH_LINALG_HPP

#include <cstddef>
#include <functional>

#include "rmetro/qmath/matrix.hpp"
#include "rmetro/qmath/tolerances.hpp"

namespace rmetro {

/// Eigendecomposition of a Hermitian matrix. Columns of `eigenvectors` pair with
/// `eigenvalues`, which are sorted ascending.
struct HermEig {
    RVector eigenvalues;
    CMatrix eigenvectors;

    /// V diag(f(lambda)) V^dagger
    CMatrix apply(const std::function<double(double)> &f) const;
};

struct SymEig {
    RVector eigenvalues;
    RMatrix eigenvectors;

    RMatrix apply(const std::function<double(double)> &f) const;
};

/// Cyclic Jacobi eigensolver. Throws NumericalError when the input is not
/// Hermitian to tol::kEig (relative) or when sweeps fail to converge.
HermEig eigh(const CMatrix &h);
SymEig eigh_sym(const RMatrix &s);

double lambda_min(const CMatrix &h);
double lambda_min(const RMatrix &s);
double lambda_max(const RMatrix &s);

/// True iff lambda_min(A - B) >= -tol.
bool psd_ge(const CMatrix &a, const CMatrix &b, double tol = tol::kPsd);
bool psd_ge(const RMatrix &a, const RMatrix &b, double tol = tol::kPsd);

/// Moore-Penrose pseudo-inverse; eigenvalues with |lambda| <= rank_tol * max|lambda|
/// are dropped.
RMatrix pinv_sym(const RMatrix &s, double rank_tol = tol::kRank);
std::size_t numerical_rank(const RMatrix &s, double rank_tol = tol::kRank);

/// S^{-1/2} of a symmetric positive definite matrix.
RMatrix inv_sqrt_sym(const RMatrix &s);
/// A^{-1/2} of a Hermitian positive definite matrix.
CMatrix inv_sqrt_psd(const CMatrix &a);

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
CMatrix expm(const CMatrix &a);

}  // namespace rmetro

#endif
