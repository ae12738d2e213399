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

#ifndef RMETRO_DESIGNS_POVM_HPP
#define RMETRO_DESIGNS_POVM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "rmetro/qmath/matrix.hpp"
#include "rmetro/qmath/rng.hpp"

namespace rmetro {

/// Weighted state ensemble {(q_s, |s>)} with sum_s q_s |s><s| = 1/d. The
/// measurement it defines has elements M_s = q_s d |s><s|.
class RankOnePOVM {
   public:
    /// Normalizes the states. Throws DomainError when the ensemble is not
    /// complete to `tolerance`; pass a negative tolerance to skip the check
    /// (the defect is still recorded).
    RankOnePOVM(std::vector<double> weights, std::vector<CVector> states, double tolerance = 1e-10,
                std::string label = "");

    std::size_t dim() const {
        return dim_;
    }
    std::size_t size() const {
        return weights_.size();
    }
    double weight(std::size_t s) const {
        return weights_[s];
    }
    const CVector &state(std::size_t s) const {
        return states_[s];
    }
    const std::vector<double> &weights() const {
        return weights_;
    }
    const std::vector<CVector> &states() const {
        return states_;
    }
    /// Frobenius norm of sum_s q_s |s><s| - 1/d.
    double completeness_error() const {
        return completeness_error_;
    }
    const std::string &label() const {
        return label_;
    }
    /// Element M_s as a dense matrix.
    CMatrix element(std::size_t s) const;

    /// Combines elements whose projectors coincide to `tolerance`.
    RankOnePOVM merged(double tolerance = 1e-9) const;

   private:
    std::size_t dim_ = 0;
    std::vector<double> weights_;
    std::vector<CVector> states_;
    double completeness_error_ = 0;
    std::string label_;
};

/// A general finite POVM given by dense PSD elements.
class Povm {
   public:
    explicit Povm(std::vector<CMatrix> elements, double tolerance = 1e-8);
    static Povm from_rank_one(const RankOnePOVM &m);

    std::size_t dim() const {
        return elements_.front().rows();
    }
    std::size_t size() const {
        return elements_.size();
    }
    const CMatrix &element(std::size_t x) const {
        return elements_[x];
    }
    const std::vector<CMatrix> &elements() const {
        return elements_;
    }

   private:
    std::vector<CMatrix> elements_;
};

/// Random Pauli measurement on one qubit: 6 eigenstates of X, Y, Z with weight 1/6.
RankOnePOVM pauli_povm_1q();

/// Projective measurement in the computational basis.
RankOnePOVM computational_basis(std::size_t d);

/// Weighted unitaries (p_U, U) measured in the computational basis give
/// elements (p_U / d, U|x>).
RankOnePOVM povm_from_unitary_ensemble(const std::vector<double> &probs, const std::vector<CMatrix> &unitaries,
                                       const std::string &label = "unitary-ensemble");

/// Product measurement on the tensor product space.
RankOnePOVM tensor_product(const RankOnePOVM &a, const RankOnePOVM &b);

/// Random rank-one POVM with k outcomes: Gaussian vectors w_x made complete via
/// |phi_x> = S^{-1/2} |w_x>, S = sum_x |w_x><w_x|.
RankOnePOVM random_rank_one_povm(std::size_t d, std::size_t k, Rng &rng);

/// Sum_s q_s |s><s| for diagnostics.
CMatrix frame_operator(const RankOnePOVM &m);

}  // namespace rmetro

#endif
