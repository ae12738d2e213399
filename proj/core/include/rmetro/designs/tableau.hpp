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


#ifndef RMETRO_DESIGNS_TABLEAU_HPP
#define RMETRO_DESIGNS_TABLEAU_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rmetro/qmath/matrix.hpp"

namespace rmetro {

/// Pauli operator i^phase * prod_q sigma(x_q, z_q), where sigma(1, 1) = Y.
struct PauliString {
    std::vector<uint8_t> x;
    std::vector<uint8_t> z;
    uint8_t phase = 0;  // power of i, mod 4

    explicit PauliString(std::size_t n = 0) : x(n, 0), z(n, 0) {}
    std::size_t n() const {
        return x.size();
    }
    bool is_identity() const;
    /// "+XIZ", "-iY" and so on.
    std::string to_string() const;
    static PauliString parse(const std::string &s);

    bool operator==(const PauliString &o) const = default;
};

/// a * b with phase tracking.
PauliString pauli_product(const PauliString &a, const PauliString &b);
bool paulis_commute(const PauliString &a, const PauliString &b);
/// Applies the Pauli to a state vector; qubit 0 is the most significant bit.
CVector apply_pauli(const PauliString &p, const CVector &v);
CMatrix pauli_dense(const PauliString &p);

enum class GateKind : uint8_t { H, S, Sdg, X, Y, Z, CNOT, CZ };

struct Gate {
    GateKind kind;
    uint32_t a;
    uint32_t b = 0;

    bool operator==(const Gate &o) const = default;
};

Gate inverse(const Gate &g);
std::string to_string(const Gate &g);

/// Stabilizer tableau of a Clifford U: row q holds U X_q U^dagger
/// (destabilizers) and row n + q holds U Z_q U^dagger (stabilizers), each with
/// a sign bit. Global phase is not represented.
class Tableau {
public:
    explicit Tableau(std::size_t n = 1);
    static Tableau from_gates(std::size_t n, const std::vector<Gate> &gates);

    std::size_t n() const {
        return n_;
    }
    uint8_t x(std::size_t row, std::size_t q) const {
        return x_[row * n_ + q];
    }
    uint8_t z(std::size_t row, std::size_t q) const {
        return z_[row * n_ + q];
    }
    uint8_t r(std::size_t row) const {
        return r_[row];
    }
    void set(std::size_t row, std::size_t q, uint8_t xb, uint8_t zb);
    void set_sign(std::size_t row, uint8_t rb);

    /// Row as a Hermitian Pauli (phase 0 or 2).
    PauliString row(std::size_t r) const;

    /// U -> G U for a single gate.
    void apply(const Gate &g);
    void apply_h(std::size_t q);
    void apply_s(std::size_t q);
    void apply_sdg(std::size_t q);
    void apply_x(std::size_t q);
    void apply_y(std::size_t q);
    void apply_z(std::size_t q);
    void apply_cnot(std::size_t c, std::size_t t);
    void apply_cz(std::size_t a, std::size_t b);

    /// U P U^dagger.
    PauliString conjugate(const PauliString &p) const;

    /// Rows satisfy the canonical commutation relations over GF(2).
    bool is_symplectic() const;

    /// Tableau of (this) after (first): U_this * U_first.
    Tableau compose(const Tableau &first) const;
    Tableau inverse() const;

    /// Compact descriptor, equal iff the Cliffords agree up to global phase.
    std::string key() const;

    bool operator==(const Tableau &o) const = default;

private:
    std::size_t n_;
    std::vector<uint8_t> x_;
    std::vector<uint8_t> z_;
    std::vector<uint8_t> r_;
};

/// Gate list C with C applied after U giving the identity tableau, inverted,
/// so that Tableau::from_gates(n, synthesize(t)) == t.
std::vector<Gate> synthesize(const Tableau &t);

/// Dense unitary of a gate list, first gate applied first.
CMatrix dense_from_gates(std::size_t n, const std::vector<Gate> &gates);
/// Dense unitary of a tableau, fixed up to a global phase: U|0> is the joint
/// +1 eigenvector of the stabilizer rows and U|x> = prod_q D_q^{x_q} U|0>.
CMatrix dense_from_tableau(const Tableau &t);
/// Column x of dense_from_tableau(t) without building the other columns.
CVector tableau_column(const Tableau &t, std::size_t x);

/// max |A - e^{i a} B| minimized over the global phase (aligned on the largest entry of B).
double phase_insensitive_distance(const CMatrix &a, const CMatrix &b);

}  // namespace rmetro

#endif
