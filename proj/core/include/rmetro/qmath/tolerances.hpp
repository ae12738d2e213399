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

#ifndef RMETRO_QMATH_TOLERANCES_HPP
#define RMETRO_QMATH_TOLERANCES_HPP

namespace rmetro::tol {

/// Eigensolver reconstruction, hermiticity and state validity checks.
inline constexpr double kEig = 1e-10;
/// Slack for positive-semidefinite ordering checks.
inline constexpr double kPsd = 1e-9;
/// Relative eigenvalue cutoff used for supports and pseudo-inverses.
inline constexpr double kRank = 1e-12;
/// Outcome probabilities below this are dropped from Fisher sums.
inline constexpr double kProbFloor = 1e-14;
/// POVM completeness.
inline constexpr double kComplete = 1e-8;

}  // namespace rmetro::tol

#endif
