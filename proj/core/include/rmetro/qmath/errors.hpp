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

#ifndef RMETRO_QMATH_ERRORS_HPP
#define RMETRO_QMATH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rmetro {

/// Shapes do not conform for the requested operation.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the domain where an object is defined.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a trustworthy answer.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rmetro

#endif
