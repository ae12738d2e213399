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

#include "rmetro/qmath/random.hpp"

#include <cmath>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

CVector gaussian_vector(std::size_t d, Rng &rng) {
    CVector v(d);
    for (auto &x : v) {
        x = rng.complex_normal();
    }
    return v;
}

CVector random_state(std::size_t d, Rng &rng) {
    return normalized(gaussian_vector(d, rng));
}

CMatrix random_unitary(std::size_t d, Rng &rng) {
    CMatrix u(d, d);
    for (std::size_t c = 0; c < d; c++) {
        CVector v = gaussian_vector(d, rng);
        // Two passes of modified Gram-Schmidt for stability.
        for (int pass = 0; pass < 2; pass++) {
            for (std::size_t k = 0; k < c; k++) {
                cplx proj{};
                for (std::size_t r = 0; r < d; r++) {
                    proj += std::conj(u(r, k)) * v[r];
                }
                for (std::size_t r = 0; r < d; r++) {
                    v[r] -= proj * u(r, k);
                }
            }
        }
        u.set_column(c, normalized(v));
    }
    return u;
}

CMatrix random_hermitian(std::size_t d, Rng &rng) {
    CMatrix h(d, d);
    for (std::size_t r = 0; r < d; r++) {
        h(r, r) = rng.normal();
        for (std::size_t c = r + 1; c < d; c++) {
            h(r, c) = rng.complex_normal();
            h(c, r) = std::conj(h(r, c));
        }
    }
    return h;
}

CMatrix random_density(std::size_t d, std::size_t rank, Rng &rng) {
    if (rank == 0 || rank > d) {
        throw DomainError("random_density: rank must be in [1, d]");
    }
    CMatrix g(d, rank);
    for (auto &x : g.data()) {
        x = rng.complex_normal();
    }
    CMatrix rho = g * g.adjoint();
    rho *= cplx(1.0 / rho.trace().real());
    return hermitian_part(rho);
}

RMatrix random_spd(std::size_t m, Rng &rng) {
    RMatrix g(m, m);
    for (auto &x : g.data()) {
        x = rng.normal();
    }
    RMatrix s = g * g.transpose();
    for (std::size_t k = 0; k < m; k++) {
        s(k, k) += 0.5;
    }
    return symmetrized(s);
}

}  // namespace rmetro
