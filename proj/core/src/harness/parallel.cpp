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

#include "rmetro/harness/parallel.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rmetro {

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &body) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; i++) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    const std::size_t t = std::min(workers, n);
    for (std::size_t k = 0; k < t; k++) {
        threads.emplace_back(run);
    }
    for (auto &th : threads) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::size_t default_workers() {
    const unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0;
        for (double x : v) {
            s += x;
        }
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double pairwise_mean(std::span<const double> v) {
    return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

SampleStats sample_stats(std::span<const double> v) {
    SampleStats s;
    s.n = v.size();
    s.mean = pairwise_mean(v);
    if (v.size() < 2) {
        return s;
    }
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); i++) {
        dev[i] = (v[i] - s.mean) * (v[i] - s.mean);
    }
    s.variance = pairwise_sum(dev) / static_cast<double>(v.size() - 1);
    s.stderr_ = std::sqrt(s.variance / static_cast<double>(v.size()));
    return s;
}

double z_score(double empirical, double expected, double stderr_) {
    const double diff = empirical - expected;
    if (stderr_ > 0) {
        return diff / stderr_;
    }
    return diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double rmse(std::span<const double> errors) {
    std::vector<double> sq(errors.size());
    for (std::size_t k = 0; k < errors.size(); k++) {
        sq[k] = errors[k] * errors[k];
    }
    return std::sqrt(pairwise_mean(sq));
}

double bootstrap_rmse_stderr(std::span<const double> errors, std::size_t rounds, Rng &rng) {
    if (errors.empty() || rounds < 2) {
        return 0;
    }
    std::vector<double> stats(rounds);
    std::vector<double> sample(errors.size());
    for (std::size_t r = 0; r < rounds; r++) {
        for (auto &v : sample) {
            v = errors[rng.below(errors.size())];
        }
        stats[r] = rmse(sample);
    }
    return std::sqrt(sample_stats(stats).variance);
}

}  // namespace rmetro
