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

#include "rmetro/qmath/rng.hpp"

#include <cmath>
#include <numbers>

namespace rmetro {

namespace {

constexpr uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
constexpr uint64_t kM1 = 0xCA5A826395121157ULL;
constexpr uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kW1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(uint64_t a, uint64_t b, uint64_t &hi, uint64_t &lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<uint64_t>(p >> 64);
    lo = static_cast<uint64_t>(p);
}

uint64_t mix(uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

}  // namespace

std::array<uint64_t, 4> philox4x64(std::array<uint64_t, 4> ctr, std::array<uint64_t, 2> key) {
    for (int round = 0; round < 10; round++) {
        uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, ctr[0], hi0, lo0);
        mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

Rng::Rng(uint64_t seed, uint64_t domain, uint64_t a, uint64_t b, uint64_t c)
    : key_{seed, domain}, counter_{0, a, b, c} {
}

Rng Rng::split(uint64_t index) const {
    // The evicted path word is folded into the domain key.
    const uint64_t domain = mix(key_[1] ^ mix(counter_[1] + 0x632BE59BD9B4E019ULL));
    return Rng(key_[0], domain, counter_[2], counter_[3], index);
}

void Rng::refill() {
    block_ = philox4x64(counter_, key_);
    counter_[0]++;
    used_ = 0;
}

Rng::result_type Rng::operator()() {
    if (used_ == 4) {
        refill();
    }
    return block_[used_++];
}

double Rng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

uint64_t Rng::below(uint64_t n) {
    // Lemire's nearly divisionless rejection method.
    uint64_t x = (*this)();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    uint64_t low = static_cast<uint64_t>(m);
    if (low < n) {
        const uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            x = (*this)();
            m = static_cast<unsigned __int128>(x) * n;
            low = static_cast<uint64_t>(m);
        }
    }
    return static_cast<uint64_t>(m >> 64);
}

bool Rng::bit() {
    return ((*this)() >> 63) != 0;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double r = std::sqrt(-2 * std::log(u1));
    const double t = 2 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2, im * std::numbers::sqrt2 / 2};
}

}  // namespace rmetro
