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

#ifndef RMETRO_MODELS_PAULI_HPP
#define RMETRO_MODELS_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rmetro/qmath/matrix.hpp"

namespace rmetro {

/// n-qubit Pauli operator packed as k = (x << n) | z, where bit n-1-q of x and
/// z belongs to qubit q (qubit 0 is the most significant bit of a basis
/// index). k = 0 is the identity. The operator is i^{|x & z|} X^x Z^z, so a
/// qubit with x = z = 1 carries Y.
struct PauliLabel {
    std::size_t n = 1;
    uint64_t k = 0;

    uint64_t x() const {
        return k >> n;
    }
    uint64_t z() const {
        return k & ((uint64_t{1} << n) - 1);
    }
    bool is_identity() const {
        return k == 0;
    }
    static PauliLabel from_xz(std::size_t n, uint64_t x, uint64_t z);
    /// Parses strings such as "XIZ".
    static PauliLabel parse(const std::string &s);
    std::string to_string() const;
    /// Number of Y factors.
    std::size_t y_count() const;

    bool operator==(const PauliLabel &o) const = default;
};

std::size_t pauli_count(std::size_t n);

/// P_a P_b = phase * P_{a xor b}; phase is one of 1, i, -1, -i.
struct PauliProduct {
    PauliLabel label;
    cplx phase;
};
PauliProduct pauli_mul(const PauliLabel &a, const PauliLabel &b);
/// Exponent e in phase = i^e.
int pauli_mul_exponent(const PauliLabel &a, const PauliLabel &b);
bool commutes(const PauliLabel &a, const PauliLabel &b);

CMatrix pauli_matrix(const PauliLabel &p);
/// P|y> = pauli_column_phase(p, y) |y xor x>.
cplx pauli_column_phase(const PauliLabel &p, uint64_t y);
/// (P tensor 1_ancilla) v.
CVector apply_pauli(const PauliLabel &p, const CVector &v, std::size_t ancilla_dim = 1);
/// (P tensor 1) rho (P tensor 1).
CMatrix conjugate_by_pauli(const PauliLabel &p, const CMatrix &rho, std::size_t ancilla_dim = 1);

/// Pauli channel rho -> sum_k q_k P_k rho P_k on n qubits.
class PauliChannel {
   public:
    /// Throws DomainError for negative rates or rates not summing to 1
    /// within 1e-10, DimensionError when the count is not 4^n.
    PauliChannel(std::size_t n, RVector rates);

    static PauliChannel identity(std::size_t n);
    /// q_0 = 1 - q, q_k = q / (d^2 - 1).
    static PauliChannel depolarizing(std::size_t n, double q);
    /// Whitespace separated rates, q_0 first.
    static PauliChannel from_text(std::size_t n, const std::string &text);

    std::size_t qubits() const {
        return n_;
    }
    std::size_t dim() const {
        return std::size_t{1} << n_;
    }
    const RVector &rates() const {
        return rates_;
    }
    double rate(uint64_t k) const {
        return rates_[k];
    }
    /// Total error rate 1 - q_0.
    double total() const {
        return 1 - rates_[0];
    }

   private:
    std::size_t n_;
    RVector rates_;
};

/// Acts on the leading (probe) factor of a probe tensor ancilla space.
CMatrix apply_pauli_channel(const CMatrix &rho, const PauliChannel &ch, std::size_t ancilla_dim = 1);

/// Random rates with q_0 >= 1 - max_total.
PauliChannel random_pauli_channel(std::size_t n, double max_total, uint64_t seed);

}  // namespace rmetro

#endif
