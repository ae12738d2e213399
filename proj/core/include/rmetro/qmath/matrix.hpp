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

#ifndef RMETRO_QMATH_MATRIX_HPP
#define RMETRO_QMATH_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace rmetro {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

/// Dense row-major matrix. Element type is complex<double> or double.
template <typename T>
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }
    /// Row-major initialization.
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> entries);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) {
        return Matrix(rows, cols);
    }
    static Matrix diagonal(const std::vector<double> &diag);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }
    bool empty() const {
        return data_.empty();
    }

    T &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const T &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    std::vector<T> &data() {
        return data_;
    }
    const std::vector<T> &data() const {
        return data_;
    }

    Matrix adjoint() const;
    Matrix transpose() const;
    T trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    std::vector<T> column(std::size_t c) const;
    void set_column(std::size_t c, const std::vector<T> &v);

    Matrix &operator+=(const Matrix &other);
    Matrix &operator-=(const Matrix &other);
    Matrix &operator*=(T scalar);

    bool operator==(const Matrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using CMatrix = Matrix<cplx>;
using RMatrix = Matrix<double>;

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T> &b) {
    a += b;
    return a;
}
template <typename T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T> &b) {
    a -= b;
    return a;
}
template <typename T>
Matrix<T> operator*(Matrix<T> a, T s) {
    a *= s;
    return a;
}
template <typename T>
Matrix<T> operator*(T s, Matrix<T> a) {
    a *= s;
    return a;
}
CMatrix operator*(double s, CMatrix a);
CMatrix operator*(CMatrix a, double s);

template <typename T>
Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b);
template <typename T>
std::vector<T> operator*(const Matrix<T> &a, const std::vector<T> &v);

template <typename T>
Matrix<T> kron(const Matrix<T> &a, const Matrix<T> &b);
CVector kron(const CVector &a, const CVector &b);

/// |ket><bra|
CMatrix outer(const CVector &ket, const CVector &bra);
/// |v><v|
CMatrix projector(const CVector &v);
/// <a|b>
cplx inner(const CVector &a, const CVector &b);
double norm(const CVector &v);
CVector normalized(const CVector &v);
/// <v|A|v>
cplx expectation(const CMatrix &a, const CVector &v);
/// Tr(AB) without forming the product.
cplx trace_product(const CMatrix &a, const CMatrix &b);
CMatrix commutator(const CMatrix &a, const CMatrix &b);
CMatrix anticommutator(const CMatrix &a, const CMatrix &b);
/// Frobenius norm of A - A^dagger.
double hermiticity_gap(const CMatrix &a);
/// (A + A^dagger)/2
CMatrix hermitian_part(const CMatrix &a);
RMatrix real_part(const CMatrix &a);
CMatrix to_complex(const RMatrix &a);
/// Symmetrizes in place to remove roundoff asymmetry.
RMatrix symmetrized(const RMatrix &a);
CVector basis_vector(std::size_t dim, std::size_t index);

std::string to_string(const CMatrix &m, int precision = 6);
std::string to_string(const RMatrix &m, int precision = 6);

}  // namespace rmetro

#endif
