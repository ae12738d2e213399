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

#ifndef RMETRO_STATES_FAMILIES_HPP
#define RMETRO_STATES_FAMILIES_HPP

#include <cstdint>

#include "rmetro/qmath/rng.hpp"
#include "rmetro/states/family.hpp"

namespace rmetro {

/// (|0> + e^{i theta}|1>)/sqrt(2)
class PhaseQubitFamily : public PureStateFamily {
   public:
    std::string name() const override {
        return "phase_qubit";
    }
    std::size_t dim() const override {
        return 2;
    }
    std::size_t n_params() const override {
        return 1;
    }
    CVector ket(const RVector &theta) const override;
    std::vector<CVector> ket_derivs(const RVector &theta) const override;

   protected:
    std::optional<std::string> domain_violation(const RVector &, bool, double) const override {
        return std::nullopt;
    }
};

/// sqrt(f)|phi> + sqrt(1-f)|phi_perp(g)>, with |phi_perp(g)> on the unit
/// sphere of a real span of a fixed orthonormal basis of the complement of
/// |phi>. Parameters are (f, g_1, ..., g_k) with k <= d-2 hyperspherical angles.
class FidelityPureFamily : public PureStateFamily {
   public:
    explicit FidelityPureFamily(CVector target, std::size_t n_angles);
    explicit FidelityPureFamily(CVector target);

    std::string name() const override {
        return "fidelity_pure";
    }
    std::size_t dim() const override {
        return target_.size();
    }
    std::size_t n_params() const override {
        return 1 + n_angles_;
    }
    CVector ket(const RVector &theta) const override;
    std::vector<CVector> ket_derivs(const RVector &theta) const override;

    const CVector &target() const {
        return target_;
    }
    /// Orthonormal basis of the complement of the target (d-1 vectors).
    const std::vector<CVector> &complement() const {
        return complement_;
    }
    CVector perp(const RVector &angles) const;

   protected:
    std::optional<std::string> domain_violation(const RVector &theta, bool open, double margin) const override;

   private:
    CVector target_;
    std::size_t n_angles_;
    std::vector<CVector> complement_;
};

/// sqrt(phi_0)|GHZ> + sum_i sqrt(phi_i) X_i|GHZ>, phi_0 = 1 - sum_i phi_i.
class GHZMixFamily : public PureStateFamily {
   public:
    explicit GHZMixFamily(std::size_t n);

    std::string name() const override {
        return "ghz_mix";
    }
    std::size_t dim() const override {
        return std::size_t{1} << n_;
    }
    std::size_t n_params() const override {
        return n_;
    }
    std::size_t qubits() const {
        return n_;
    }
    CVector ket(const RVector &theta) const override;
    std::vector<CVector> ket_derivs(const RVector &theta) const override;

    /// k = 0 gives the GHZ state, k >= 1 the GHZ state with qubit k-1 flipped.
    CVector basis_state(std::size_t k) const;
    /// Component weights (phi_0, phi_1, ..., phi_n).
    static RVector weights(const RVector &phi);

   protected:
    std::optional<std::string> domain_violation(const RVector &theta, bool open, double margin) const override;

   private:
    std::size_t n_;
};

/// |<psi(target)|psi(state)>|^2 for GHZ-mix parameters.
double ghz_fidelity(const RVector &phi_target, const RVector &phi_state);

/// f|phi><phi| + (1-f)(1 - |phi><phi|)/(d-1).
class DepolarizedFidelityFamily : public ParamStateFamily {
   public:
    explicit DepolarizedFidelityFamily(CVector target);

    std::string name() const override {
        return "depolarized_fidelity";
    }
    std::size_t dim() const override {
        return target_.size();
    }
    std::size_t n_params() const override {
        return 1;
    }
    bool has_analytic_derivs() const override {
        return true;
    }
    const CVector &target() const {
        return target_;
    }

   protected:
    std::optional<std::string> domain_violation(const RVector &theta, bool open, double margin) const override;
    CMatrix eval_unchecked(const RVector &theta) const override;
    std::vector<CMatrix> analytic_derivs(const RVector &theta) const override;

   private:
    CVector target_;
};

/// (1 + sum_i theta_i P_i)/2^n over the non-identity elements of a stabilizer
/// group. The default group is generated by single-qubit Z operators.
class StabilizerMixFamily : public ParamStateFamily {
   public:
    StabilizerMixFamily(std::size_t n, std::vector<CMatrix> paulis);
    explicit StabilizerMixFamily(std::size_t n);

    std::string name() const override {
        return "stabilizer_mix";
    }
    std::size_t dim() const override {
        return std::size_t{1} << n_;
    }
    std::size_t n_params() const override {
        return paulis_.size();
    }
    bool has_analytic_derivs() const override {
        return true;
    }
    const std::vector<CMatrix> &paulis() const {
        return paulis_;
    }

   protected:
    std::optional<std::string> domain_violation(const RVector &theta, bool open, double margin) const override;
    CMatrix eval_unchecked(const RVector &theta) const override;
    std::vector<CMatrix> analytic_derivs(const RVector &theta) const override;

   private:
    std::size_t n_;
    std::vector<CMatrix> paulis_;
};

/// normalize(psi_0 + sum_i theta_i v_i) with Gaussian psi_0, v_i drawn from a seed.
class RandomPureFamily : public PureStateFamily {
   public:
    RandomPureFamily(std::size_t d, std::size_t m, uint64_t seed);

    std::string name() const override {
        return "random_pure";
    }
    std::size_t dim() const override {
        return base_.size();
    }
    std::size_t n_params() const override {
        return dirs_.size();
    }
    CVector ket(const RVector &theta) const override;
    std::vector<CVector> ket_derivs(const RVector &theta) const override;

   protected:
    std::optional<std::string> domain_violation(const RVector &, bool, double) const override {
        return std::nullopt;
    }

   private:
    CVector base_;
    std::vector<CVector> dirs_;
};

/// W W^dagger / Tr(W W^dagger) with W = W_0 + sum_i theta_i W_i a d x r matrix,
/// giving rank-r states whose conditioning is set by `spread` (eigenvalues of
/// the base state are proportional to spread^k).
class RandomMixedFamily : public ParamStateFamily {
   public:
    RandomMixedFamily(std::size_t d, std::size_t rank, std::size_t m, uint64_t seed, double spread = 1.0);

    std::string name() const override {
        return "random_mixed";
    }
    std::size_t dim() const override {
        return base_.rows();
    }
    std::size_t n_params() const override {
        return dirs_.size();
    }
    bool has_analytic_derivs() const override {
        return true;
    }

   protected:
    std::optional<std::string> domain_violation(const RVector &, bool, double) const override {
        return std::nullopt;
    }
    CMatrix eval_unchecked(const RVector &theta) const override;
    std::vector<CMatrix> analytic_derivs(const RVector &theta) const override;

   private:
    CMatrix factor(const RVector &theta) const;

    CMatrix base_;
    std::vector<CMatrix> dirs_;
};

/// Full state-space parameterization of rank-r states around a base state:
/// m = r(2d - r) - 1 directions tangent to the rank-r manifold.
std::size_t rank_manifold_dimension(std::size_t d, std::size_t r);

/// Which directions of the maximal parameterization to keep: all of them,
/// those inside the support, or those leaving it.
enum class FullParamCase { All, Support, OffSupport };

/// Derivative operators of a maximal parameterization around a rank-r state
/// whose eigenvectors are the columns of `eigvecs` (support first):
/// |k><l| + |l><k| and i|k><l| - i|l><k| for k < l, k < r, plus the r - 1
/// traceless diagonal moves |k><k| - |k+1><k+1| on the support. Support keeps
/// l < r and the diagonal moves (r^2 - 1 directions); OffSupport keeps l >= r
/// only (2r(d - r) directions).
std::vector<CMatrix> full_parameter_directions(const CMatrix &eigvecs, std::size_t r,
                                               FullParamCase which = FullParamCase::All);

}  // namespace rmetro

#endif
