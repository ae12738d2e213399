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


#ifndef RMETRO_DESIGNS_CLIFFORD_HPP
#define RMETRO_DESIGNS_CLIFFORD_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "rmetro/designs/povm.hpp"
#include "rmetro/designs/tableau.hpp"
#include "rmetro/qmath/rng.hpp"

namespace rmetro {

struct CliffordElement {
    Tableau tableau;
    /// Gate list realizing the tableau, first gate applied first.
    std::vector<Gate> gates;
    /// Dense unitary up to global phase; empty when not requested or n > 4.
    CMatrix unitary;
};

/// Uniformly random Clifford tableau (signs included) from the canonical
/// Hadamard-permutation decomposition.
Tableau random_clifford_tableau(std::size_t n, Rng &rng);
CliffordElement clifford_sample(std::size_t n, Rng &rng, bool with_unitary = true);

/// Every n-qubit Clifford modulo global phase, n in {1, 2}.
std::vector<CliffordElement> clifford_enumerate(std::size_t n);
std::size_t clifford_group_order(std::size_t n);

/// Uniform mixture over the given Cliffords, measured in the computational basis.
RankOnePOVM clifford_povm(const std::vector<CliffordElement> &group, const std::string &label);

/// All n-qubit stabilizer states (orbit of |0...0> under the Clifford group),
/// each normalized so that its first nonzero amplitude is real positive.
std::vector<CVector> stabilizer_states(std::size_t n);
std::size_t stabilizer_state_count(std::size_t n);
/// Uniform weights over stabilizer_states(n); an exact 3-design.
RankOnePOVM stabilizer_povm(std::size_t n);

}  // namespace rmetro

#endif
