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

#include "rmetro/states/family.hpp"

#include <sstream>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

void ParamStateFamily::check_size(const RVector &theta) const {
    if (theta.size() != n_params()) {
        std::ostringstream ss;
        ss << name() << ": expected " << n_params() << " parameters, got " << theta.size();
        throw DimensionError(ss.str());
    }
}

void ParamStateFamily::set_deriv_mode(DerivMode mode, double step) {
    if (mode == DerivMode::Analytic && !has_analytic_derivs()) {
        throw DomainError(name() + ": no analytic derivatives available");
    }
    if (!(step > 0)) {
        throw DomainError(name() + ": finite-difference step must be positive");
    }
    mode_ = mode;
    step_ = step;
}

CMatrix ParamStateFamily::eval(const RVector &theta) const {
    check_size(theta);
    if (auto bad = domain_violation(theta, false, 0)) {
        throw DomainError(name() + ": parameter " + *bad + " outside the domain");
    }
    return eval_unchecked(theta);
}

std::vector<CMatrix> ParamStateFamily::derivs(const RVector &theta) const {
    if (mode_ == DerivMode::Analytic && has_analytic_derivs()) {
        check_size(theta);
        if (auto bad = domain_violation(theta, true, 0)) {
            throw DomainError(name() + ": parameter " + *bad + " must be interior for derivatives");
        }
        return analytic_derivs(theta);
    }
    return central_difference(theta, step_);
}

std::vector<CMatrix> ParamStateFamily::central_difference(const RVector &theta, double h) const {
    check_size(theta);
    if (auto bad = domain_violation(theta, true, h)) {
        throw DomainError(name() + ": parameter " + *bad +
                          " is within one finite-difference step of the domain boundary; use analytic "
                          "derivatives or shrink the domain");
    }
    std::vector<CMatrix> out;
    out.reserve(n_params());
    for (std::size_t i = 0; i < n_params(); i++) {
        RVector plus = theta;
        RVector minus = theta;
        plus[i] += h;
        minus[i] -= h;
        CMatrix d = eval_unchecked(plus) - eval_unchecked(minus);
        d *= cplx(1 / (2 * h));
        out.push_back(hermitian_part(d));
    }
    return out;
}

std::vector<CMatrix> ParamStateFamily::analytic_derivs(const RVector &) const {
    throw DomainError(name() + ": no analytic derivatives available");
}

CMatrix PureStateFamily::eval_unchecked(const RVector &theta) const {
    return projector(ket(theta));
}

std::vector<CMatrix> PureStateFamily::analytic_derivs(const RVector &theta) const {
    const CVector psi = ket(theta);
    std::vector<CMatrix> out;
    for (const auto &dpsi : ket_derivs(theta)) {
        out.push_back(outer(dpsi, psi) + outer(psi, dpsi));
    }
    return out;
}

}  // namespace rmetro
