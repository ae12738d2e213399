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


#include "rmetro/designs/tableau.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

namespace {

// Exponent of i in sigma(x1, z1) sigma(x2, z2) = i^g sigma(x1 ^ x2, z1 ^ z2).
int g_exponent(int x1, int z1, int x2, int z2) {
    if (x1 == 0 && z1 == 0) {
        return 0;
    }
    if (x1 == 1 && z1 == 1) {
        return z2 - x2;
    }
    if (x1 == 1) {
        return z2 * (2 * x2 - 1);
    }
    return x2 * (1 - 2 * z2);
}

std::size_t shift_of(std::size_t n, std::size_t q) {
    return n - 1 - q;
}

void require_qubit(std::size_t n, std::size_t q) {
    if (q >= n) {
        throw DimensionError("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n) +
                             " qubits");
    }
}

const cplx kPhases[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

}  // namespace

bool PauliString::is_identity() const {
    for (std::size_t q = 0; q < n(); q++) {
        if (x[q] || z[q]) {
            return false;
        }
    }
    return true;
}

std::string PauliString::to_string() const {
    static const char *prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[phase & 3];
    for (std::size_t q = 0; q < n(); q++) {
        s += x[q] ? (z[q] ? 'Y' : 'X') : (z[q] ? 'Z' : 'I');
    }
    return s;
}

PauliString PauliString::parse(const std::string &s) {
    std::size_t pos = 0;
    uint8_t phase = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        phase = s[pos] == '-' ? 2 : 0;
        pos++;
    }
    if (pos < s.size() && s[pos] == 'i') {
        phase = static_cast<uint8_t>((phase + 1) & 3);
        pos++;
    }
    PauliString p(s.size() - pos);
    p.phase = phase;
    for (std::size_t q = 0; pos < s.size(); pos++, q++) {
        switch (s[pos]) {
            case 'I':
                break;
            case 'X':
                p.x[q] = 1;
                break;
            case 'Y':
                p.x[q] = p.z[q] = 1;
                break;
            case 'Z':
                p.z[q] = 1;
                break;
            default:
                throw DomainError("PauliString::parse: bad character in '" + s + "'");
        }
    }
    return p;
}

PauliString pauli_product(const PauliString &a, const PauliString &b) {
    if (a.n() != b.n()) {
        throw DimensionError("pauli_product: qubit counts differ");
    }
    PauliString out(a.n());
    int phase = a.phase + b.phase;
    for (std::size_t q = 0; q < a.n(); q++) {
        phase += g_exponent(a.x[q], a.z[q], b.x[q], b.z[q]);
        out.x[q] = a.x[q] ^ b.x[q];
        out.z[q] = a.z[q] ^ b.z[q];
    }
    out.phase = static_cast<uint8_t>(((phase % 4) + 4) % 4);
    return out;
}

bool paulis_commute(const PauliString &a, const PauliString &b) {
    int s = 0;
    for (std::size_t q = 0; q < a.n(); q++) {
        s ^= (a.x[q] & b.z[q]) ^ (a.z[q] & b.x[q]);
    }
    return s == 0;
}

CVector apply_pauli(const PauliString &p, const CVector &v) {
    const std::size_t n = p.n();
    if (v.size() != (std::size_t{1} << n)) {
        throw DimensionError("apply_pauli: vector length does not match the qubit count");
    }
    std::size_t xmask = 0;
    std::size_t zmask = 0;
    int y = 0;
    for (std::size_t q = 0; q < n; q++) {
        xmask |= static_cast<std::size_t>(p.x[q]) << shift_of(n, q);
        zmask |= static_cast<std::size_t>(p.z[q]) << shift_of(n, q);
        y += p.x[q] & p.z[q];
    }
    const cplx base = kPhases[(p.phase + y) & 3];
    CVector out(v.size());
    for (std::size_t b = 0; b < v.size(); b++) {
        const bool odd = __builtin_popcountll(b & zmask) & 1;
        out[b ^ xmask] = (odd ? -base : base) * v[b];
    }
    return out;
}

CMatrix pauli_dense(const PauliString &p) {
    const std::size_t d = std::size_t{1} << p.n();
    CMatrix m(d, d);
    for (std::size_t c = 0; c < d; c++) {
        m.set_column(c, apply_pauli(p, basis_vector(d, c)));
    }
    return m;
}

Gate inverse(const Gate &g) {
    Gate out = g;
    if (g.kind == GateKind::S) {
        out.kind = GateKind::Sdg;
    } else if (g.kind == GateKind::Sdg) {
        out.kind = GateKind::S;
    }
    return out;
}

std::string to_string(const Gate &g) {
    static const char *names[] = {"H", "S", "SDG", "X", "Y", "Z", "CNOT", "CZ"};
    std::ostringstream ss;
    ss << names[static_cast<int>(g.kind)] << ' ' << g.a;
    if (g.kind == GateKind::CNOT || g.kind == GateKind::CZ) {
        ss << ' ' << g.b;
    }
    return ss.str();
}

Tableau::Tableau(std::size_t n) : n_(n), x_(2 * n * n, 0), z_(2 * n * n, 0), r_(2 * n, 0) {
    if (n == 0) {
        throw DimensionError("Tableau: need at least one qubit");
    }
    for (std::size_t q = 0; q < n; q++) {
        x_[q * n + q] = 1;
        z_[(n + q) * n + q] = 1;
    }
}

Tableau Tableau::from_gates(std::size_t n, const std::vector<Gate> &gates) {
    Tableau t(n);
    for (const auto &g : gates) {
        t.apply(g);
    }
    return t;
}

void Tableau::set(std::size_t row, std::size_t q, uint8_t xb, uint8_t zb) {
    x_[row * n_ + q] = xb & 1;
    z_[row * n_ + q] = zb & 1;
}

void Tableau::set_sign(std::size_t row, uint8_t rb) {
    r_[row] = rb & 1;
}

PauliString Tableau::row(std::size_t r) const {
    PauliString p(n_);
    for (std::size_t q = 0; q < n_; q++) {
        p.x[q] = x(r, q);
        p.z[q] = z(r, q);
    }
    p.phase = static_cast<uint8_t>(2 * r_[r]);
    return p;
}

void Tableau::apply(const Gate &g) {
    switch (g.kind) {
        case GateKind::H:
            apply_h(g.a);
            break;
        case GateKind::S:
            apply_s(g.a);
            break;
        case GateKind::Sdg:
            apply_sdg(g.a);
            break;
        case GateKind::X:
            apply_x(g.a);
            break;
        case GateKind::Y:
            apply_y(g.a);
            break;
        case GateKind::Z:
            apply_z(g.a);
            break;
        case GateKind::CNOT:
            apply_cnot(g.a, g.b);
            break;
        case GateKind::CZ:
            apply_cz(g.a, g.b);
            break;
    }
}

void Tableau::apply_h(std::size_t q) {
    require_qubit(n_, q);
    for (std::size_t i = 0; i < 2 * n_; i++) {
        uint8_t &xb = x_[i * n_ + q];
        uint8_t &zb = z_[i * n_ + q];
        r_[i] ^= xb & zb;
        std::swap(xb, zb);
    }
}

void Tableau::apply_s(std::size_t q) {
    require_qubit(n_, q);
    for (std::size_t i = 0; i < 2 * n_; i++) {
        const uint8_t xb = x_[i * n_ + q];
        uint8_t &zb = z_[i * n_ + q];
        r_[i] ^= xb & zb;
        zb ^= xb;
    }
}

void Tableau::apply_sdg(std::size_t q) {
    require_qubit(n_, q);
    for (std::size_t i = 0; i < 2 * n_; i++) {
        const uint8_t xb = x_[i * n_ + q];
        uint8_t &zb = z_[i * n_ + q];
        r_[i] ^= xb & (zb ^ 1);
        zb ^= xb;
    }
}

void Tableau::apply_x(std::size_t q) {
    require_qubit(n_, q);
    for (std::size_t i = 0; i < 2 * n_; i++) {
        r_[i] ^= z_[i * n_ + q];
    }
}

void Tableau::apply_y(std::size_t q) {
    require_qubit(n_, q);
    for (std::size_t i = 0; i < 2 * n_; i++) {
        r_[i] ^= x_[i * n_ + q] ^ z_[i * n_ + q];
    }
}

void Tableau::apply_z(std::size_t q) {
    require_qubit(n_, q);
    for (std::size_t i = 0; i < 2 * n_; i++) {
        r_[i] ^= x_[i * n_ + q];
    }
}

void Tableau::apply_cnot(std::size_t c, std::size_t t) {
    require_qubit(n_, c);
    require_qubit(n_, t);
    if (c == t) {
        throw DomainError("CNOT control and target coincide");
    }
    for (std::size_t i = 0; i < 2 * n_; i++) {
        const uint8_t xc = x_[i * n_ + c];
        const uint8_t zt = z_[i * n_ + t];
        uint8_t &xt = x_[i * n_ + t];
        uint8_t &zc = z_[i * n_ + c];
        r_[i] ^= xc & zt & (xt ^ zc ^ 1);
        xt ^= xc;
        zc ^= zt;
    }
}

void Tableau::apply_cz(std::size_t a, std::size_t b) {
    apply_h(b);
    apply_cnot(a, b);
    apply_h(b);
}

PauliString Tableau::conjugate(const PauliString &p) const {
    if (p.n() != n_) {
        throw DimensionError("Tableau::conjugate: qubit counts differ");
    }
    PauliString acc(n_);
    int phase = p.phase;
    for (std::size_t q = 0; q < n_; q++) {
        phase += p.x[q] & p.z[q];
    }
    acc.phase = static_cast<uint8_t>(phase & 3);
    for (std::size_t q = 0; q < n_; q++) {
        if (p.x[q]) {
            acc = pauli_product(acc, row(q));
        }
    }
    for (std::size_t q = 0; q < n_; q++) {
        if (p.z[q]) {
            acc = pauli_product(acc, row(n_ + q));
        }
    }
    return acc;
}

bool Tableau::is_symplectic() const {
    std::vector<PauliString> rows;
    for (std::size_t i = 0; i < 2 * n_; i++) {
        rows.push_back(row(i));
    }
    for (std::size_t i = 0; i < 2 * n_; i++) {
        for (std::size_t j = i + 1; j < 2 * n_; j++) {
            const bool should_anticommute = j == i + n_;
            if (paulis_commute(rows[i], rows[j]) == should_anticommute) {
                return false;
            }
        }
    }
    return true;
}

Tableau Tableau::compose(const Tableau &first) const {
    if (first.n_ != n_) {
        throw DimensionError("Tableau::compose: qubit counts differ");
    }
    Tableau out(n_);
    for (std::size_t i = 0; i < 2 * n_; i++) {
        const PauliString p = conjugate(first.row(i));
        if (p.phase & 1) {
            throw NumericalError("Tableau::compose: non-Hermitian image, tableau is not a valid Clifford");
        }
        for (std::size_t q = 0; q < n_; q++) {
            out.set(i, q, p.x[q], p.z[q]);
        }
        out.r_[i] = p.phase >> 1;
    }
    return out;
}

Tableau Tableau::inverse() const {
    std::vector<Gate> gates = synthesize(*this);
    std::vector<Gate> inv;
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        inv.push_back(rmetro::inverse(*it));
    }
    return from_gates(n_, inv);
}

std::string Tableau::key() const {
    std::string s;
    s.reserve(x_.size() + z_.size() + r_.size());
    for (std::size_t i = 0; i < x_.size(); i++) {
        s += static_cast<char>('0' + x_[i] + 2 * z_[i]);
    }
    for (uint8_t b : r_) {
        s += static_cast<char>('0' + b);
    }
    return s;
}

std::vector<Gate> synthesize(const Tableau &input) {
    if (!input.is_symplectic()) {
        throw DomainError("synthesize: tableau is not symplectic");
    }
    const std::size_t n = input.n();
    Tableau t = input;
    std::vector<Gate> c;
    auto push = [&](Gate g) {
        t.apply(g);
        c.push_back(g);
    };
    for (std::size_t q = 0; q < n; q++) {
        // Destabilizer row q: make every supported qubit X-type.
        for (std::size_t k = q; k < n; k++) {
            if (t.x(q, k) && t.z(q, k)) {
                push({GateKind::S, static_cast<uint32_t>(k)});
            } else if (t.z(q, k)) {
                push({GateKind::H, static_cast<uint32_t>(k)});
            }
        }
        if (!t.x(q, q)) {
            std::size_t pivot = q;
            for (std::size_t k = q + 1; k < n; k++) {
                if (t.x(q, k)) {
                    pivot = k;
                    break;
                }
            }
            if (pivot == q) {
                throw NumericalError("synthesize: destabilizer has no support");
            }
            push({GateKind::CNOT, static_cast<uint32_t>(pivot), static_cast<uint32_t>(q)});
        }
        for (std::size_t k = q + 1; k < n; k++) {
            if (t.x(q, k)) {
                push({GateKind::CNOT, static_cast<uint32_t>(q), static_cast<uint32_t>(k)});
            }
        }
        // Stabilizer row n + q now anticommutes with X_q only.
        const std::size_t s = n + q;
        if (t.x(s, q)) {
            // Y_q -> Z_q while X_q is fixed.
            push({GateKind::H, static_cast<uint32_t>(q)});
            push({GateKind::S, static_cast<uint32_t>(q)});
            push({GateKind::H, static_cast<uint32_t>(q)});
        }
        for (std::size_t k = q + 1; k < n; k++) {
            if (t.x(s, k) && t.z(s, k)) {
                push({GateKind::S, static_cast<uint32_t>(k)});
            }
            if (t.x(s, k)) {
                push({GateKind::H, static_cast<uint32_t>(k)});
            }
            if (t.z(s, k)) {
                push({GateKind::CNOT, static_cast<uint32_t>(k), static_cast<uint32_t>(q)});
            }
        }
    }
    for (std::size_t q = 0; q < n; q++) {
        if (t.r(q)) {
            push({GateKind::Z, static_cast<uint32_t>(q)});
        }
        if (t.r(n + q)) {
            push({GateKind::X, static_cast<uint32_t>(q)});
        }
    }
    if (!(t == Tableau(n))) {
        throw NumericalError("synthesize: elimination did not reach the identity");
    }
    std::vector<Gate> out;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        out.push_back(inverse(*it));
    }
    return out;
}

namespace {

void apply_gate(std::size_t n, const Gate &g, CVector &v) {
    const std::size_t d = v.size();
    const std::size_t ma = std::size_t{1} << shift_of(n, g.a);
    const cplx i(0, 1);
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1 / std::sqrt(2.0);
            for (std::size_t b = 0; b < d; b++) {
                if (!(b & ma)) {
                    const cplx u = v[b];
                    const cplx w = v[b | ma];
                    v[b] = s * (u + w);
                    v[b | ma] = s * (u - w);
                }
            }
            break;
        }
        case GateKind::S:
        case GateKind::Sdg: {
            const cplx ph = g.kind == GateKind::S ? i : -i;
            for (std::size_t b = 0; b < d; b++) {
                if (b & ma) {
                    v[b] *= ph;
                }
            }
            break;
        }
        case GateKind::X:
        case GateKind::Y:
            for (std::size_t b = 0; b < d; b++) {
                if (!(b & ma)) {
                    std::swap(v[b], v[b | ma]);
                    if (g.kind == GateKind::Y) {
                        // Y|0> = i|1>, Y|1> = -i|0>
                        v[b] *= -i;
                        v[b | ma] *= i;
                    }
                }
            }
            break;
        case GateKind::Z:
            for (std::size_t b = 0; b < d; b++) {
                if (b & ma) {
                    v[b] = -v[b];
                }
            }
            break;
        case GateKind::CNOT: {
            const std::size_t mb = std::size_t{1} << shift_of(n, g.b);
            for (std::size_t b = 0; b < d; b++) {
                if ((b & ma) && !(b & mb)) {
                    std::swap(v[b], v[b | mb]);
                }
            }
            break;
        }
        case GateKind::CZ: {
            const std::size_t mb = std::size_t{1} << shift_of(n, g.b);
            for (std::size_t b = 0; b < d; b++) {
                if ((b & ma) && (b & mb)) {
                    v[b] = -v[b];
                }
            }
            break;
        }
    }
}

}  // namespace

CMatrix dense_from_gates(std::size_t n, const std::vector<Gate> &gates) {
    if (n > 12) {
        throw DomainError("dense_from_gates: more than 12 qubits");
    }
    const std::size_t d = std::size_t{1} << n;
    CMatrix u(d, d);
    for (std::size_t c = 0; c < d; c++) {
        CVector v = basis_vector(d, c);
        for (const auto &g : gates) {
            require_qubit(n, g.a);
            if (g.kind == GateKind::CNOT || g.kind == GateKind::CZ) {
                require_qubit(n, g.b);
            }
            apply_gate(n, g, v);
        }
        u.set_column(c, v);
    }
    return u;
}

namespace {

// U|0>: some basis vector has overlap at least 1/d with it, and projecting
// onto the joint +1 eigenspace of the stabilizer rows recovers it.
CVector tableau_zero_state(const Tableau &t) {
    const std::size_t n = t.n();
    if (n > 12) {
        throw DomainError("dense expansion of a tableau needs at most 12 qubits");
    }
    const std::size_t d = std::size_t{1} << n;
    std::vector<PauliString> stab;
    for (std::size_t q = 0; q < n; q++) {
        stab.push_back(t.row(n + q));
    }
    CVector psi0;
    double best = 0;
    for (std::size_t k = 0; k < d && best < 1.0 / static_cast<double>(d) - 1e-9; k++) {
        CVector v = basis_vector(d, k);
        for (const auto &s : stab) {
            const CVector sv = apply_pauli(s, v);
            for (std::size_t b = 0; b < d; b++) {
                v[b] = 0.5 * (v[b] + sv[b]);
            }
        }
        const double nv = norm(v);
        if (nv * nv > best) {
            best = nv * nv;
            psi0 = v;
        }
    }
    return normalized(psi0);
}

}  // namespace

CMatrix dense_from_tableau(const Tableau &t) {
    const std::size_t n = t.n();
    const CVector psi0 = tableau_zero_state(t);
    const std::size_t d = psi0.size();
    std::vector<PauliString> destab;
    for (std::size_t q = 0; q < n; q++) {
        destab.push_back(t.row(q));
    }
    std::vector<CVector> cols(d);
    cols[0] = psi0;
    for (std::size_t x = 1; x < d; x++) {
        const std::size_t low = x & (~x + 1);
        const std::size_t q = n - 1 - static_cast<std::size_t>(__builtin_ctzll(low));
        cols[x] = apply_pauli(destab[q], cols[x ^ low]);
    }
    CMatrix u(d, d);
    for (std::size_t x = 0; x < d; x++) {
        u.set_column(x, cols[x]);
    }
    return u;
}

CVector tableau_column(const Tableau &t, std::size_t x) {
    const std::size_t n = t.n();
    CVector v = tableau_zero_state(t);
    if (x >= v.size()) {
        throw DimensionError("tableau_column: column index out of range");
    }
    for (std::size_t q = 0; q < n; q++) {
        if ((x >> (n - 1 - q)) & 1) {
            v = apply_pauli(t.row(q), v);
        }
    }
    return v;
}

double phase_insensitive_distance(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("phase_insensitive_distance: shapes differ");
    }
    std::size_t idx = 0;
    for (std::size_t k = 0; k < b.data().size(); k++) {
        if (std::abs(b.data()[k]) > std::abs(b.data()[idx])) {
            idx = k;
        }
    }
    const cplx ratio = a.data()[idx] / b.data()[idx];
    const cplx phase = std::abs(ratio) > 0 ? ratio / std::abs(ratio) : cplx(1, 0);
    double worst = 0;
    for (std::size_t k = 0; k < b.data().size(); k++) {
        worst = std::max(worst, std::abs(a.data()[k] - phase * b.data()[k]));
    }
    return worst;
}

}  // namespace rmetro
