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

#include "rmetro/designs/povm.hpp"

#include <cmath>
#include <sstream>

#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/random.hpp"

namespace rmetro {

RankOnePOVM::RankOnePOVM(std::vector<double> weights, std::vector<CVector> states, double tolerance,
                         std::string label)
    : weights_(std::move(weights)), states_(std::move(states)), label_(std::move(label)) {
    if (weights_.size() != states_.size() || states_.empty()) {
        throw DimensionError("RankOnePOVM: weights and states must be nonempty and of equal length");
    }
    dim_ = states_.front().size();
    for (std::size_t s = 0; s < states_.size(); s++) {
        if (states_[s].size() != dim_) {
            throw DimensionError("RankOnePOVM: states have different dimensions");
        }
        if (!(weights_[s] >= 0)) {
            throw DomainError("RankOnePOVM: negative weight");
        }
        states_[s] = normalized(states_[s]);
    }
    CMatrix gap = frame_operator(*this);
    for (std::size_t k = 0; k < dim_; k++) {
        gap(k, k) -= 1.0 / static_cast<double>(dim_);
    }
    completeness_error_ = gap.frobenius_norm();
    if (tolerance >= 0 && completeness_error_ > tolerance) {
        std::ostringstream ss;
        ss << "RankOnePOVM: ensemble is not complete (defect " << completeness_error_ << ")";
        throw DomainError(ss.str());
    }
}

CMatrix RankOnePOVM::element(std::size_t s) const {
    CMatrix m = projector(states_[s]);
    m *= cplx(weights_[s] * static_cast<double>(dim_));
    return m;
}

RankOnePOVM RankOnePOVM::merged(double tolerance) const {
    std::vector<double> w;
    std::vector<CVector> st;
    for (std::size_t s = 0; s < size(); s++) {
        bool found = false;
        for (std::size_t t = 0; t < st.size(); t++) {
            // Same ray iff |<a|b>| = 1.
            if (1 - std::abs(inner(st[t], states_[s])) < tolerance) {
                w[t] += weights_[s];
                found = true;
                break;
            }
        }
        if (!found) {
            w.push_back(weights_[s]);
            st.push_back(states_[s]);
        }
    }
    return RankOnePOVM(std::move(w), std::move(st), -1, label_ + "/merged");
}

CMatrix frame_operator(const RankOnePOVM &m) {
    const std::size_t d = m.dim();
    CMatrix f(d, d);
    for (std::size_t s = 0; s < m.size(); s++) {
        const CVector &v = m.state(s);
        const double q = m.weight(s);
        for (std::size_t r = 0; r < d; r++) {
            const cplx vr = q * v[r];
            for (std::size_t c = 0; c < d; c++) {
                f(r, c) += vr * std::conj(v[c]);
            }
        }
    }
    return f;
}

Povm::Povm(std::vector<CMatrix> elements, double tolerance) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw DimensionError("Povm: no elements");
    }
    const std::size_t d = elements_.front().rows();
    CMatrix sum(d, d);
    for (const auto &e : elements_) {
        if (e.rows() != d || e.cols() != d) {
            throw DimensionError("Povm: elements have different shapes");
        }
        if (lambda_min(e) < -tol::kEig) {
            throw DomainError("Povm: element is not positive semidefinite");
        }
        sum += e;
    }
    const double defect = (sum - CMatrix::identity(d)).frobenius_norm();
    if (defect > tolerance) {
        std::ostringstream ss;
        ss << "Povm: elements do not sum to the identity (defect " << defect << ")";
        throw DomainError(ss.str());
    }
}

Povm Povm::from_rank_one(const RankOnePOVM &m) {
    std::vector<CMatrix> elements;
    for (std::size_t s = 0; s < m.size(); s++) {
        elements.push_back(m.element(s));
    }
    return Povm(std::move(elements));
}

RankOnePOVM pauli_povm_1q() {
    const double s = 1 / std::sqrt(2.0);
    const cplx i(0, 1);
    std::vector<CVector> states{
        {s, s}, {s, -s},          // X
        {s, i * s}, {s, -i * s},  // Y
        {1, 0}, {0, 1},           // Z
    };
    return RankOnePOVM(std::vector<double>(6, 1.0 / 6), std::move(states), 1e-10, "pauli1q");
}

RankOnePOVM computational_basis(std::size_t d) {
    std::vector<CVector> states;
    for (std::size_t x = 0; x < d; x++) {
        states.push_back(basis_vector(d, x));
    }
    return RankOnePOVM(std::vector<double>(d, 1.0 / static_cast<double>(d)), std::move(states), 1e-10,
                       "computational");
}

RankOnePOVM povm_from_unitary_ensemble(const std::vector<double> &probs, const std::vector<CMatrix> &unitaries,
                                       const std::string &label) {
    if (probs.size() != unitaries.size() || probs.empty()) {
        throw DimensionError("povm_from_unitary_ensemble: probabilities and unitaries differ in length");
    }
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    if (std::abs(total - 1) > 1e-10) {
        throw DomainError("povm_from_unitary_ensemble: probabilities do not sum to 1");
    }
    const std::size_t d = unitaries.front().rows();
    std::vector<double> w;
    std::vector<CVector> st;
    w.reserve(d * unitaries.size());
    st.reserve(d * unitaries.size());
    for (std::size_t k = 0; k < unitaries.size(); k++) {
        const CMatrix &u = unitaries[k];
        if (u.rows() != d || u.cols() != d) {
            throw DimensionError("povm_from_unitary_ensemble: unitaries differ in dimension");
        }
        if ((u.adjoint() * u - CMatrix::identity(d)).frobenius_norm() > 1e-9) {
            throw DomainError("povm_from_unitary_ensemble: entry " + std::to_string(k) + " is not unitary");
        }
        for (std::size_t x = 0; x < d; x++) {
            w.push_back(probs[k] / static_cast<double>(d));
            st.push_back(u.column(x));
        }
    }
    return RankOnePOVM(std::move(w), std::move(st), 1e-10, label);
}

RankOnePOVM tensor_product(const RankOnePOVM &a, const RankOnePOVM &b) {
    std::vector<double> w;
    std::vector<CVector> st;
    for (std::size_t s = 0; s < a.size(); s++) {
        for (std::size_t t = 0; t < b.size(); t++) {
            w.push_back(a.weight(s) * b.weight(t));
            st.push_back(kron(a.state(s), b.state(t)));
        }
    }
    return RankOnePOVM(std::move(w), std::move(st), 1e-10, a.label() + "x" + b.label());
}

RankOnePOVM random_rank_one_povm(std::size_t d, std::size_t k, Rng &rng) {
    if (k < d) {
        throw DomainError("random_rank_one_povm: need at least d outcomes");
    }
    std::vector<CVector> raw;
    CMatrix frame(d, d);
    for (std::size_t x = 0; x < k; x++) {
        raw.push_back(gaussian_vector(d, rng));
        frame += projector(raw.back());
    }
    const CMatrix t = inv_sqrt_psd(frame);
    std::vector<double> w;
    std::vector<CVector> st;
    for (const auto &v : raw) {
        CVector phi = t * v;
        const double n2 = norm(phi) * norm(phi);
        w.push_back(n2 / static_cast<double>(d));
        st.push_back(phi);
    }
    return RankOnePOVM(std::move(w), std::move(st), 1e-9, "random");
}

}  // namespace rmetro
