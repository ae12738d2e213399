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


#include "rmetro/designs/clifford.hpp"

#include <cmath>
#include <deque>
#include <unordered_set>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

namespace {

using BitMatrix = std::vector<std::vector<uint8_t>>;

BitMatrix bit_identity(std::size_t n) {
    BitMatrix m(n, std::vector<uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; i++) {
        m[i][i] = 1;
    }
    return m;
}

BitMatrix bit_mul(const BitMatrix &a, const BitMatrix &b) {
    const std::size_t n = a.size();
    const std::size_t k = b.size();
    const std::size_t m = b.front().size();
    BitMatrix out(n, std::vector<uint8_t>(m, 0));
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t l = 0; l < k; l++) {
            if (a[i][l]) {
                for (std::size_t j = 0; j < m; j++) {
                    out[i][j] ^= b[l][j];
                }
            }
        }
    }
    return out;
}

BitMatrix bit_transpose(const BitMatrix &a) {
    BitMatrix out(a.front().size(), std::vector<uint8_t>(a.size(), 0));
    for (std::size_t i = 0; i < a.size(); i++) {
        for (std::size_t j = 0; j < a[i].size(); j++) {
            out[j][i] = a[i][j];
        }
    }
    return out;
}

// Inverse of a unit lower-triangular matrix over GF(2) by forward substitution.
BitMatrix inverse_unit_lower(const BitMatrix &l) {
    const std::size_t n = l.size();
    BitMatrix inv = bit_identity(n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < i; j++) {
            if (l[i][j]) {
                for (std::size_t c = 0; c < n; c++) {
                    inv[i][c] ^= inv[j][c];
                }
            }
        }
    }
    return inv;
}

void fill_lower(BitMatrix &m, Rng &rng, bool symmetric) {
    for (std::size_t i = 1; i < m.size(); i++) {
        for (std::size_t j = 0; j < i; j++) {
            m[i][j] = rng.bit();
            if (symmetric) {
                m[j][i] = m[i][j];
            }
        }
    }
}

// Quantum Mallows sampling of the Hadamard layer and qubit permutation.
void sample_qmallows(std::size_t n, Rng &rng, std::vector<uint8_t> &had, std::vector<std::size_t> &perm) {
    had.assign(n, 0);
    perm.assign(n, 0);
    std::vector<std::size_t> inds(n);
    for (std::size_t i = 0; i < n; i++) {
        inds[i] = i;
    }
    for (std::size_t i = 0; i < n; i++) {
        const std::size_t m = n - i;
        const double eps = std::pow(4.0, -static_cast<double>(m));
        double r = 0;
        while (r == 0) {
            r = rng.uniform();
        }
        const long index = -static_cast<long>(std::ceil(std::log2(r + (1 - r) * eps)));
        const long mm = static_cast<long>(m);
        had[i] = index < mm;
        const long k = index < mm ? index : 2 * mm - index - 1;
        perm[i] = inds[static_cast<std::size_t>(k)];
        inds.erase(inds.begin() + k);
    }
}

BitMatrix block_table(const BitMatrix &delta, const BitMatrix &gamma) {
    const std::size_t n = delta.size();
    const BitMatrix prod = bit_mul(gamma, delta);
    const BitMatrix inv = bit_transpose(inverse_unit_lower(delta));
    BitMatrix t(2 * n, std::vector<uint8_t>(2 * n, 0));
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            t[i][j] = delta[i][j];
            t[n + i][j] = prod[i][j];
            t[n + i][n + j] = inv[i][j];
        }
    }
    return t;
}

CliffordElement finish(const Tableau &t, bool with_unitary) {
    CliffordElement e{t, synthesize(t), {}};
    if (with_unitary && t.n() <= 4) {
        e.unitary = dense_from_tableau(t);
    }
    return e;
}

std::string state_key(const CVector &v) {
    std::string key;
    for (const auto &a : v) {
        key += std::to_string(std::llround(a.real() * 1e8));
        key += ',';
        key += std::to_string(std::llround(a.imag() * 1e8));
        key += ';';
    }
    return key;
}

CVector canonical_phase(const CVector &v) {
    for (const auto &a : v) {
        if (std::abs(a) > 1e-9) {
            const cplx ph = std::conj(a) / std::abs(a);
            CVector out(v.size());
            for (std::size_t k = 0; k < v.size(); k++) {
                out[k] = ph * v[k];
            }
            return out;
        }
    }
    return v;
}

}  // namespace

Tableau random_clifford_tableau(std::size_t n, Rng &rng) {
    if (n == 0) {
        throw DimensionError("random_clifford_tableau: need at least one qubit");
    }
    std::vector<uint8_t> had;
    std::vector<std::size_t> perm;
    sample_qmallows(n, rng, had, perm);

    BitMatrix gamma1(n, std::vector<uint8_t>(n, 0));
    BitMatrix gamma2 = gamma1;
    for (std::size_t i = 0; i < n; i++) {
        gamma1[i][i] = rng.bit();
    }
    for (std::size_t i = 0; i < n; i++) {
        gamma2[i][i] = rng.bit();
    }
    BitMatrix delta1 = bit_identity(n);
    BitMatrix delta2 = bit_identity(n);
    fill_lower(gamma1, rng, true);
    fill_lower(gamma2, rng, true);
    fill_lower(delta1, rng, false);
    fill_lower(delta2, rng, false);

    const BitMatrix table1 = block_table(delta1, gamma1);
    const BitMatrix table2 = block_table(delta2, gamma2);

    BitMatrix table(2 * n);
    for (std::size_t i = 0; i < n; i++) {
        table[i] = table2[perm[i]];
        table[n + i] = table2[n + perm[i]];
    }
    for (std::size_t i = 0; i < n; i++) {
        if (had[i]) {
            std::swap(table[i], table[n + i]);
        }
    }
    // Left factor table1, middle layer and right factor table2: F1 W F2.
    const BitMatrix symp = bit_mul(table1, table);

    Tableau t(n);
    for (std::size_t row = 0; row < 2 * n; row++) {
        for (std::size_t q = 0; q < n; q++) {
            t.set(row, q, symp[row][q], symp[row][n + q]);
        }
    }
    for (std::size_t row = 0; row < 2 * n; row++) {
        t.set_sign(row, rng.bit());
    }
    if (n <= 64 && !t.is_symplectic()) {
        throw NumericalError("random_clifford_tableau: sampled table is not symplectic");
    }
    return t;
}

CliffordElement clifford_sample(std::size_t n, Rng &rng, bool with_unitary) {
    return finish(random_clifford_tableau(n, rng), with_unitary);
}

std::size_t clifford_group_order(std::size_t n) {
    // 2^{n^2 + 2n} prod_j (4^j - 1)
    std::size_t order = std::size_t{1} << (n * n + 2 * n);
    for (std::size_t j = 1; j <= n; j++) {
        order *= (std::size_t{1} << (2 * j)) - 1;
    }
    return order;
}

std::vector<CliffordElement> clifford_enumerate(std::size_t n) {
    if (n < 1 || n > 2) {
        throw DomainError("clifford_enumerate: only n = 1, 2 are enumerable; use clifford_sample for larger n");
    }
    std::vector<Gate> gens;
    for (uint32_t q = 0; q < n; q++) {
        gens.push_back({GateKind::H, q});
        gens.push_back({GateKind::S, q});
        for (uint32_t t = 0; t < n; t++) {
            if (t != q) {
                gens.push_back({GateKind::CNOT, q, t});
            }
        }
    }
    std::vector<Tableau> found{Tableau(n)};
    std::unordered_set<std::string> seen{found.front().key()};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const Tableau cur = found[queue.front()];
        queue.pop_front();
        for (const auto &g : gens) {
            Tableau next = cur;
            next.apply(g);
            if (seen.insert(next.key()).second) {
                found.push_back(next);
                queue.push_back(found.size() - 1);
            }
        }
    }
    std::vector<CliffordElement> out;
    out.reserve(found.size());
    for (const auto &t : found) {
        out.push_back(finish(t, true));
    }
    return out;
}

RankOnePOVM clifford_povm(const std::vector<CliffordElement> &group, const std::string &label) {
    std::vector<CMatrix> us;
    for (const auto &e : group) {
        us.push_back(e.unitary.empty() ? dense_from_tableau(e.tableau) : e.unitary);
    }
    const std::vector<double> p(us.size(), 1.0 / static_cast<double>(us.size()));
    return povm_from_unitary_ensemble(p, us, label);
}

std::size_t stabilizer_state_count(std::size_t n) {
    // 2^n prod_{k=1}^{n} (2^k + 1)
    std::size_t c = std::size_t{1} << n;
    for (std::size_t k = 1; k <= n; k++) {
        c *= (std::size_t{1} << k) + 1;
    }
    return c;
}

std::vector<CVector> stabilizer_states(std::size_t n) {
    if (n < 1 || n > 6) {
        throw DomainError("stabilizer_states: n must lie in [1, 6]");
    }
    const std::size_t d = std::size_t{1} << n;
    std::vector<Gate> gens;
    for (uint32_t q = 0; q < n; q++) {
        gens.push_back({GateKind::H, q});
        gens.push_back({GateKind::S, q});
        for (uint32_t t = 0; t < n; t++) {
            if (t != q) {
                gens.push_back({GateKind::CNOT, q, t});
            }
        }
    }
    std::vector<CMatrix> mats;
    for (const auto &g : gens) {
        mats.push_back(dense_from_gates(n, {g}));
    }
    std::vector<CVector> found{basis_vector(d, 0)};
    std::unordered_set<std::string> seen{state_key(found.front())};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const CVector cur = found[queue.front()];
        queue.pop_front();
        for (const auto &u : mats) {
            const CVector next = canonical_phase(u * cur);
            if (seen.insert(state_key(next)).second) {
                found.push_back(next);
                queue.push_back(found.size() - 1);
            }
        }
    }
    return found;
}

RankOnePOVM stabilizer_povm(std::size_t n) {
    std::vector<CVector> states = stabilizer_states(n);
    const std::size_t k = states.size();
    // The orbit is Clifford invariant, so uniform weights already give sum_s |s><s| / K = 1/d.
    return RankOnePOVM(std::vector<double>(k, 1.0 / static_cast<double>(k)), std::move(states), 1e-10,
                       "stabilizer" + std::to_string(n));
}

}  // namespace rmetro
