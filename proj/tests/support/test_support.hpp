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


// Shared helpers for the unit tests. The Pauli matrices here are written out
// by hand so that tests do not lean on the library's own Pauli code.

#ifndef RMETRO_TESTS_SUPPORT_HPP
#define RMETRO_TESTS_SUPPORT_HPP

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "rmetro/qmath/matrix.hpp"

namespace rmetro::testing {

inline CMatrix pauli_i() {
    return CMatrix(2, 2, {1, 0, 0, 1});
}
inline CMatrix pauli_x() {
    return CMatrix(2, 2, {0, 1, 1, 0});
}
inline CMatrix pauli_y() {
    return CMatrix(2, 2, {0, cplx(0, -1), cplx(0, 1), 0});
}
inline CMatrix pauli_z() {
    return CMatrix(2, 2, {1, 0, 0, -1});
}

inline double max_diff(const CMatrix &a, const CMatrix &b) {
    EXPECT_EQ(a.rows(), b.rows());
    EXPECT_EQ(a.cols(), b.cols());
    double worst = 0;
    for (std::size_t k = 0; k < a.data().size(); k++) {
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    }
    return worst;
}

inline double max_diff(const RMatrix &a, const RMatrix &b) {
    EXPECT_EQ(a.rows(), b.rows());
    EXPECT_EQ(a.cols(), b.cols());
    double worst = 0;
    for (std::size_t k = 0; k < a.data().size(); k++) {
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    }
    return worst;
}

inline RMatrix scaled_identity(std::size_t m, double s) {
    RMatrix out(m, m);
    for (std::size_t k = 0; k < m; k++) {
        out(k, k) = s;
    }
    return out;
}

// Naive matrix product, kept separate from the library's.
inline CMatrix naive_mul(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < b.cols(); j++) {
            cplx acc = 0;
            for (std::size_t k = 0; k < a.cols(); k++) {
                acc += a(i, k) * b(k, j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

inline cplx naive_trace(const CMatrix &a) {
    cplx t = 0;
    for (std::size_t k = 0; k < a.rows(); k++) {
        t += a(k, k);
    }
    return t;
}

}  // namespace rmetro::testing

#endif
