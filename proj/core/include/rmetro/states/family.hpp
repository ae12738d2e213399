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

#ifndef RMETRO_STATES_FAMILY_HPP
#define RMETRO_STATES_FAMILY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rmetro/qmath/matrix.hpp"

namespace rmetro {

enum class DerivMode { Analytic, CentralDifference };

inline constexpr double kDefaultFiniteStep = 1e-4;

/// theta -> (rho_theta, {d rho / d theta_i}).
class ParamStateFamily {
   public:
    virtual ~ParamStateFamily() = default;

    virtual std::string name() const = 0;
    virtual std::size_t dim() const = 0;
    virtual std::size_t n_params() const = 0;

    /// Validates theta and returns rho_theta. Throws DomainError naming the
    /// offending parameter.
    CMatrix eval(const RVector &theta) const;
    /// Derivatives in the configured mode.
    std::vector<CMatrix> derivs(const RVector &theta) const;
    std::vector<CMatrix> central_difference(const RVector &theta, double h) const;

    virtual bool has_analytic_derivs() const {
        return false;
    }

    DerivMode deriv_mode() const {
        return mode_;
    }
    double finite_step() const {
        return step_;
    }
    void set_deriv_mode(DerivMode mode, double step = kDefaultFiniteStep);

   protected:
    /// Name of the first parameter outside the domain, if any. `open` requests
    /// the interior (used for derivatives); `margin` shrinks it further.
    virtual std::optional<std::string> domain_violation(const RVector &theta, bool open, double margin) const = 0;
    virtual CMatrix eval_unchecked(const RVector &theta) const = 0;
    virtual std::vector<CMatrix> analytic_derivs(const RVector &theta) const;

    void check_size(const RVector &theta) const;

   private:
    DerivMode mode_ = DerivMode::Analytic;
    double step_ = kDefaultFiniteStep;
};

/// Pure-state families may expose the state vector and its derivatives.
class PureStateFamily : public ParamStateFamily {
   public:
    virtual CVector ket(const RVector &theta) const = 0;
    virtual std::vector<CVector> ket_derivs(const RVector &theta) const = 0;

    bool has_analytic_derivs() const override {
        return true;
    }

   protected:
    CMatrix eval_unchecked(const RVector &theta) const override;
    std::vector<CMatrix> analytic_derivs(const RVector &theta) const override;
};

}  // namespace rmetro

#endif
