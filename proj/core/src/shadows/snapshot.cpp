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


#include "rmetro/shadows/snapshot.hpp"

#include <cmath>
#include <sstream>

#include "rmetro/designs/clifford.hpp"
#include "rmetro/qmath/errors.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kShotDomain = 0x73686f74;  // "shot"

}  // namespace

CMatrix expand_snapshot(const CVector &s) {
    const std::size_t d = s.size();
    CMatrix m = projector(s);
    m *= cplx(static_cast<double>(d) + 1);
    for (std::size_t k = 0; k < d; k++) {
        m(k, k) -= 1.0;
    }
    return m;
}

RVector born_probabilities(const CMatrix &rho, const CMatrix &u) {
    if (rho.rows() != u.rows() || !rho.is_square() || !u.is_square()) {
        throw DimensionError("born_probabilities: state and unitary shapes differ");
    }
    const std::size_t d = rho.rows();
    RVector p(d);
    double total = 0;
    for (std::size_t x = 0; x < d; x++) {
        p[x] = expectation(rho, u.column(x)).real();
        if (p[x] < -1e-10) {
            std::ostringstream ss;
            ss << "born_probabilities: outcome " << x << " has probability " << p[x];
            throw DomainError(ss.str());
        }
        p[x] = std::max(0.0, p[x]);
        total += p[x];
    }
    if (std::abs(total - 1) > 1e-10) {
        std::ostringstream ss;
        ss << "born_probabilities: probabilities sum to " << total;
        throw DomainError(ss.str());
    }
    for (auto &v : p) {
        v /= total;
    }
    return p;
}

std::size_t sample_index(const RVector &p, Rng &rng) {
    const double u = rng.uniform();
    double acc = 0;
    std::size_t last = 0;
    for (std::size_t x = 0; x < p.size(); x++) {
        if (p[x] <= 0) {
            continue;
        }
        acc += p[x];
        last = x;
        if (u < acc) {
            return x;
        }
    }
    return last;
}

std::size_t simulate_measurement(const CMatrix &rho, const CMatrix &u, Rng &rng) {
    return sample_index(born_probabilities(rho, u), rng);
}

CVector ShadowDataset::state(std::size_t i) const {
    const ShadowSnapshot &s = snapshots.at(i);
    return tableau_column(unitaries.at(s.unitary_id), s.outcome);
}

std::vector<CVector> ShadowDataset::states() const {
    std::vector<CVector> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); i++) {
        out.push_back(state(i));
    }
    return out;
}

ShadowDataset simulate_dataset(const CMatrix &rho, std::size_t qubits, std::size_t shots, uint64_t seed,
                               const std::string &ensemble) {
    if (rho.rows() != (std::size_t{1} << qubits)) {
        throw DimensionError("simulate_dataset: state dimension is not 2^qubits");
    }
    ShadowDataset ds;
    ds.qubits = qubits;
    ds.ensemble = ensemble;
    ds.seed = seed;
    std::vector<CliffordElement> group;
    if (ensemble == "clifford-enum") {
        group = clifford_enumerate(qubits);
    } else if (ensemble != "clifford-sample") {
        throw DomainError("simulate_dataset: unknown ensemble '" + ensemble + "'");
    }
    ds.unitaries.reserve(shots);
    ds.snapshots.reserve(shots);
    for (std::size_t i = 0; i < shots; i++) {
        Rng rng(seed, kShotDomain, i);
        Tableau t = group.empty() ? random_clifford_tableau(qubits, rng) : group[rng.below(group.size())].tableau;
        const CMatrix u = dense_from_tableau(t);
        const std::size_t x = simulate_measurement(rho, u, rng);
        ds.unitaries.push_back(std::move(t));
        ds.snapshots.push_back({i, static_cast<uint32_t>(x)});
    }
    return ds;
}

}  // namespace rmetro
