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

#ifndef RMETRO_QMATH_RANDOM_HPP
#define RMETRO_QMATH_RANDOM_HPP

#include <cstddef>

#include "rmetro/qmath/matrix.hpp"
#include "rmetro/qmath/rng.hpp"

namespace rmetro {

/// Haar-random unit vector (normalized complex Gaussian).
CVector random_state(std::size_t d, Rng &rng);
/// Unnormalized complex Gaussian vector.
CVector gaussian_vector(std::size_t d, Rng &rng);
/// Haar-random unitary via Gram-Schmidt QR of a Ginibre matrix.
CMatrix random_unitary(std::size_t d, Rng &rng);
/// GUE-like Hermitian matrix with unit-variance entries.
CMatrix random_hermitian(std::size_t d, Rng &rng);
/// Random density matrix of the given rank (Wishart construction).
CMatrix random_density(std::size_t d, std::size_t rank, Rng &rng);
/// Random symmetric positive definite real matrix.
RMatrix random_spd(std::size_t m, Rng &rng);

}  // namespace rmetro

#endif
