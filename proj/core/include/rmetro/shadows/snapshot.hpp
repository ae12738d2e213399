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


#ifndef RMETRO_SHADOWS_SNAPSHOT_HPP
#define RMETRO_SHADOWS_SNAPSHOT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rmetro/designs/tableau.hpp"
#include "rmetro/qmath/matrix.hpp"
#include "rmetro/qmath/rng.hpp"

namespace rmetro {

/// (d+1)|s><s| - 1
CMatrix expand_snapshot(const CVector &s);

/// <x|U^dagger rho U|x> for every x. Throws DomainError on a probability
/// below -1e-10 or a total off 1 by more than 1e-10; small deviations are
/// clipped and renormalized.
RVector born_probabilities(const CMatrix &rho, const CMatrix &u);
/// Inverse-CDF draw from a normalized distribution.
std::size_t sample_index(const RVector &p, Rng &rng);
std::size_t simulate_measurement(const CMatrix &rho, const CMatrix &u, Rng &rng);

/// One measurement record: the Clifford applied (index into the dataset pool)
/// and the computational-basis outcome.
struct ShadowSnapshot {
    uint64_t unitary_id = 0;
    uint32_t outcome = 0;

    bool operator==(const ShadowSnapshot &o) const = default;
};

struct ShadowDataset {
    std::size_t qubits = 1;
    std::string ensemble = "clifford-sample";
    uint64_t seed = 0;
    std::vector<Tableau> unitaries;
    std::vector<ShadowSnapshot> snapshots;

    std::size_t dim() const {
        return std::size_t{1} << qubits;
    }
    std::size_t size() const {
        return snapshots.size();
    }
    /// Snapshot state U|x>, expanded from the tableau on demand.
    CVector state(std::size_t i) const;
    std::vector<CVector> states() const;
};

/// N shots of rho, each with a fresh Clifford. ensemble is "clifford-sample"
/// (uniform sampling, any n) or "clifford-enum" (uniform over the enumerated
/// group, n <= 2). Shot i uses the stream Rng(seed, domain, i).
ShadowDataset simulate_dataset(const CMatrix &rho, std::size_t qubits, std::size_t shots, uint64_t seed,
                               const std::string &ensemble = "clifford-sample");

}  // namespace rmetro

#endif
