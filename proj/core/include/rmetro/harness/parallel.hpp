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

#ifndef RMETRO_HARNESS_PARALLEL_HPP
#define RMETRO_HARNESS_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>

#include "rmetro/qmath/rng.hpp"

namespace rmetro {

/// Runs body(i) for i in [0, n) on `workers` threads. Each index is handled
/// exactly once; callers write into per-index slots so the result does not
/// depend on the worker count. The first exception thrown by a body is
/// rethrown after all threads join.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &body);

/// Hardware concurrency, at least 1.
std::size_t default_workers();

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> v);
double pairwise_mean(std::span<const double> v);

/// Sample mean, unbiased sample variance and the standard error of the mean.
struct SampleStats {
    double mean = 0;
    double variance = 0;
    double stderr_ = 0;
    std::size_t n = 0;
};
SampleStats sample_stats(std::span<const double> v);

/// sqrt(mean(e^2)).
double rmse(std::span<const double> errors);
/// Standard deviation of the RMSE over `rounds` bootstrap resamples of the errors.
double bootstrap_rmse_stderr(std::span<const double> errors, std::size_t rounds, Rng &rng);

/// (empirical - expected) / stderr, with a zero stderr mapped to 0 when the
/// difference is exactly zero and to infinity otherwise.
double z_score(double empirical, double expected, double stderr_);

}  // namespace rmetro

#endif
