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

#include "rmetro/models/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/rng.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kChannelDomain = 0x7061756c69;  // "pauli"

int popcount(uint64_t v) {
    return std::popcount(v);
}

cplx i_power(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

void check_same_n(const PauliLabel &a, const PauliLabel &b) {
    if (a.n != b.n) {
        throw DimensionError("pauli labels on different qubit counts");
    }
}

}  // namespace

PauliLabel PauliLabel::from_xz(std::size_t n, uint64_t x, uint64_t z) {
    const uint64_t mask = (uint64_t{1} << n) - 1;
    return {n, ((x & mask) << n) | (z & mask)};
}

PauliLabel PauliLabel::parse(const std::string &s) {
    const std::size_t n = s.size();
    if (n == 0 || n > 31) {
        throw DomainError("pauli label: bad length '" + s + "'");
    }
    uint64_t x = 0;
    uint64_t z = 0;
    for (std::size_t q = 0; q < n; q++) {
        const uint64_t bit = uint64_t{1} << (n - 1 - q);
        switch (s[q]) {
            case 'I':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw DomainError("pauli label: bad character in '" + s + "'");
        }
    }
    return from_xz(n, x, z);
}

std::string PauliLabel::to_string() const {
    std::string s(n, 'I');
    for (std::size_t q = 0; q < n; q++) {
        const uint64_t bit = uint64_t{1} << (n - 1 - q);
        const bool xb = x() & bit;
        const bool zb = z() & bit;
        s[q] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

std::size_t PauliLabel::y_count() const {
    return static_cast<std::size_t>(popcount(x() & z()));
}

std::size_t pauli_count(std::size_t n) {
    return std::size_t{1} << (2 * n);
}

int pauli_mul_exponent(const PauliLabel &a, const PauliLabel &b) {
    check_same_n(a, b);
    const uint64_t x1 = a.x(), z1 = a.z(), x2 = b.x(), z2 = b.z();
    const uint64_t y1 = x1 & z1;
    const uint64_t xo = x1 & ~z1;
    const uint64_t zo = ~x1 & z1;
    // Per-qubit exponents: Y.Z = iX, Y.X = -iZ, X.Y = iZ, X.Z = -iY, Z.X = iY, Z.Y = -iX.
    int e = popcount(y1 & z2 & ~x2) - popcount(y1 & x2 & ~z2);
    e += popcount(xo & z2 & x2) - popcount(xo & z2 & ~x2);
    e += popcount(zo & x2 & ~z2) - popcount(zo & x2 & z2);
    return ((e % 4) + 4) % 4;
}

PauliProduct pauli_mul(const PauliLabel &a, const PauliLabel &b) {
    const int e = pauli_mul_exponent(a, b);
    return {PauliLabel{a.n, a.k ^ b.k}, i_power(e)};
}

bool commutes(const PauliLabel &a, const PauliLabel &b) {
    check_same_n(a, b);
    return (popcount(a.x() & b.z()) + popcount(a.z() & b.x())) % 2 == 0;
}

cplx pauli_column_phase(const PauliLabel &p, uint64_t y) {
    return i_power(popcount(p.x() & p.z()) + 2 * popcount(p.z() & y));
}

CMatrix pauli_matrix(const PauliLabel &p) {
    const std::size_t d = std::size_t{1} << p.n;
    CMatrix m(d, d);
    for (uint64_t y = 0; y < d; y++) {
        m(y ^ p.x(), y) = pauli_column_phase(p, y);
    }
    return m;
}

CVector apply_pauli(const PauliLabel &p, const CVector &v, std::size_t ancilla_dim) {
    const std::size_t d = std::size_t{1} << p.n;
    if (v.size() != d * ancilla_dim) {
        throw DimensionError("apply_pauli: vector size mismatch");
    }
    CVector out(v.size());
    for (uint64_t y = 0; y < d; y++) {
        const cplx c = pauli_column_phase(p, y);
        const std::size_t to = (y ^ p.x()) * ancilla_dim;
        const std::size_t from = y * ancilla_dim;
        for (std::size_t a = 0; a < ancilla_dim; a++) {
            out[to + a] = c * v[from + a];
        }
    }
    return out;
}

CMatrix conjugate_by_pauli(const PauliLabel &p, const CMatrix &rho, std::size_t ancilla_dim) {
    const std::size_t d = std::size_t{1} << p.n;
    const std::size_t D = d * ancilla_dim;
    if (rho.rows() != D || rho.cols() != D) {
        throw DimensionError("conjugate_by_pauli: matrix size mismatch");
    }
    CVector phase(d);
    for (uint64_t y = 0; y < d; y++) {
        phase[y] = pauli_column_phase(p, y ^ p.x());
    }
    CMatrix out(D, D);
    for (std::size_t a = 0; a < D; a++) {
        const std::size_t ap = a / ancilla_dim;
        const std::size_t as = ((ap ^ p.x()) * ancilla_dim) + a % ancilla_dim;
        for (std::size_t b = 0; b < D; b++) {
            const std::size_t bp = b / ancilla_dim;
            const std::size_t bs = ((bp ^ p.x()) * ancilla_dim) + b % ancilla_dim;
            out(a, b) = phase[ap] * rho(as, bs) * std::conj(phase[bp]);
        }
    }
    return out;
}

PauliChannel::PauliChannel(std::size_t n, RVector rates) : n_(n), rates_(std::move(rates)) {
    if (rates_.size() != pauli_count(n)) {
        std::ostringstream ss;
        ss << "PauliChannel: expected " << pauli_count(n) << " rates, got " << rates_.size();
        throw DimensionError(ss.str());
    }
    double sum = 0;
    for (std::size_t k = 0; k < rates_.size(); k++) {
        if (!(rates_[k] >= 0)) {
            std::ostringstream ss;
            ss << "PauliChannel: rate q_" << k << " = " << rates_[k] << " is negative";
            throw DomainError(ss.str());
        }
        sum += rates_[k];
    }
    if (std::abs(sum - 1) > 1e-10) {
        std::ostringstream ss;
        ss << "PauliChannel: rates sum to " << sum;
        throw DomainError(ss.str());
    }
}

PauliChannel PauliChannel::identity(std::size_t n) {
    RVector r(pauli_count(n), 0.0);
    r[0] = 1;
    return {n, r};
}

PauliChannel PauliChannel::depolarizing(std::size_t n, double q) {
    if (q < 0 || q > 1) {
        throw DomainError("depolarizing: q outside [0, 1]");
    }
    const std::size_t count = pauli_count(n);
    RVector r(count, q / static_cast<double>(count - 1));
    r[0] = 1 - q;
    return {n, r};
}

PauliChannel PauliChannel::from_text(std::size_t n, const std::string &text) {
    std::istringstream in(text);
    RVector r;
    std::string tok;
    while (in >> tok) {
        try {
            r.push_back(std::stod(tok));
        } catch (const std::exception &) {
            throw DomainError("PauliChannel: bad rate '" + tok + "'");
        }
    }
    return {n, r};
}

CMatrix apply_pauli_channel(const CMatrix &rho, const PauliChannel &ch, std::size_t ancilla_dim) {
    CMatrix out(rho.rows(), rho.cols());
    for (uint64_t k = 0; k < ch.rates().size(); k++) {
        if (ch.rate(k) == 0) {
            continue;
        }
        out += conjugate_by_pauli(PauliLabel{ch.qubits(), k}, rho, ancilla_dim) * cplx(ch.rate(k));
    }
    return out;
}

PauliChannel random_pauli_channel(std::size_t n, double max_total, uint64_t seed) {
    Rng rng(seed, kChannelDomain, n);
    const std::size_t count = pauli_count(n);
    RVector r(count);
    double sum = 0;
    for (std::size_t k = 1; k < count; k++) {
        r[k] = -std::log(1 - rng.uniform());
        sum += r[k];
    }
    const double total = max_total * rng.uniform();
    for (std::size_t k = 1; k < count; k++) {
        r[k] *= total / sum;
    }
    r[0] = 1 - total;
    return {n, r};
}

}  // namespace rmetro
