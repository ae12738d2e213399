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

#ifndef RMETRO_QMATH_RNG_HPP
#define RMETRO_QMATH_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

#include "rmetro/qmath/matrix.hpp"

namespace rmetro {

/// Philox4x64-10 block function.
std::array<uint64_t, 4> philox4x64(std::array<uint64_t, 4> counter, std::array<uint64_t, 2> key);

/// Counter-based generator. A stream is addressed by (seed, domain, a, b, c):
/// the key is (seed, domain) and three counter words carry (a, b, c), leaving
/// the fourth as the block index. Any stream can be opened directly without
/// touching others, so per-shot and per-batch randomness does not depend on
/// scheduling.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed, uint64_t domain = 0, uint64_t a = 0, uint64_t b = 0, uint64_t c = 0);

    /// A child stream: the path (a, b, c) becomes (b, c, index) with `a` hashed
    /// into the domain word.
    Rng split(uint64_t index) const;

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer on [0, n).
    uint64_t below(uint64_t n);
    bool bit();
    /// Standard normal via Box-Muller.
    double normal();
    /// Circular complex Gaussian with E|z|^2 = 1.
    cplx complex_normal();

    uint64_t seed() const {
        return key_[0];
    }

   private:
    void refill();

    std::array<uint64_t, 2> key_;
    std::array<uint64_t, 4> counter_;
    std::array<uint64_t, 4> block_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace rmetro

#endif
