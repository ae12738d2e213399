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

#include "rmetro/qmath/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "rmetro/qmath/errors.hpp"

namespace rmetro {

namespace {

inline double conj_of(double x) {
    return x;
}
inline cplx conj_of(const cplx &x) {
    return std::conj(x);
}

void require_same_shape(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2, const char *op) {
    if (r1 != r2 || c1 != c2) {
        std::ostringstream ss;
        ss << op << ": shape mismatch " << r1 << "x" << c1 << " vs " << r2 << "x" << c2;
        throw DimensionError(ss.str());
    }
}

}  // namespace

template <typename T>
Matrix<T>::Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> entries)
    : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols) {
        throw DimensionError("Matrix: initializer has wrong number of entries");
    }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; k++) {
        m(k, k) = T(1);
    }
    return m;
}

template <typename T>
Matrix<T> Matrix<T>::diagonal(const std::vector<double> &diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t k = 0; k < diag.size(); k++) {
        m(k, k) = T(diag[k]);
    }
    return m;
}

template <typename T>
Matrix<T> Matrix<T>::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out(c, r) = conj_of((*this)(r, c));
        }
    }
    return out;
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

template <typename T>
T Matrix<T>::trace() const {
    if (!is_square()) {
        throw DimensionError("trace: matrix is not square");
    }
    T t{};
    for (std::size_t k = 0; k < rows_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

template <typename T>
double Matrix<T>::frobenius_norm() const {
    double s = 0;
    for (const auto &x : data_) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

template <typename T>
double Matrix<T>::max_abs() const {
    double m = 0;
    for (const auto &x : data_) {
        m = std::max(m, static_cast<double>(std::abs(x)));
    }
    return m;
}

template <typename T>
std::vector<T> Matrix<T>::column(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        v[r] = (*this)(r, c);
    }
    return v;
}

template <typename T>
void Matrix<T>::set_column(std::size_t c, const std::vector<T> &v) {
    if (v.size() != rows_) {
        throw DimensionError("set_column: length mismatch");
    }
    for (std::size_t r = 0; r < rows_; r++) {
        (*this)(r, c) = v[r];
    }
}

template <typename T>
Matrix<T> &Matrix<T>::operator+=(const Matrix &other) {
    require_same_shape(rows_, cols_, other.rows_, other.cols_, "operator+");
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

template <typename T>
Matrix<T> &Matrix<T>::operator-=(const Matrix &other) {
    require_same_shape(rows_, cols_, other.rows_, other.cols_, "operator-");
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

template <typename T>
Matrix<T> &Matrix<T>::operator*=(T scalar) {
    for (auto &x : data_) {
        x *= scalar;
    }
    return *this;
}

CMatrix operator*(double s, CMatrix a) {
    a *= cplx(s);
    return a;
}

CMatrix operator*(CMatrix a, double s) {
    a *= cplx(s);
    return a;
}

template <typename T>
Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.cols() != b.rows()) {
        std::ostringstream ss;
        ss << "matmul: inner dimensions " << a.cols() << " and " << b.rows() << " differ";
        throw DimensionError(ss.str());
    }
    Matrix<T> out(a.rows(), b.cols());
    const std::size_t n = a.cols();
    const std::size_t m = b.cols();
    for (std::size_t r = 0; r < a.rows(); r++) {
        T *orow = &out(r, 0);
        for (std::size_t k = 0; k < n; k++) {
            const T ark = a(r, k);
            if (ark == T{}) {
                continue;
            }
            const T *brow = &b(k, 0);
            for (std::size_t c = 0; c < m; c++) {
                orow[c] += ark * brow[c];
            }
        }
    }
    return out;
}

template <typename T>
std::vector<T> operator*(const Matrix<T> &a, const std::vector<T> &v) {
    if (a.cols() != v.size()) {
        throw DimensionError("matvec: dimension mismatch");
    }
    std::vector<T> out(a.rows());
    for (std::size_t r = 0; r < a.rows(); r++) {
        T s{};
        for (std::size_t c = 0; c < a.cols(); c++) {
            s += a(r, c) * v[c];
        }
        out[r] = s;
    }
    return out;
}

template <typename T>
Matrix<T> kron(const Matrix<T> &a, const Matrix<T> &b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t ac = 0; ac < a.cols(); ac++) {
            const T x = a(ar, ac);
            if (x == T{}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); br++) {
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
                }
            }
        }
    }
    return out;
}

template class Matrix<cplx>;
template class Matrix<double>;
template CMatrix operator*(const CMatrix &, const CMatrix &);
template RMatrix operator*(const RMatrix &, const RMatrix &);
template CVector operator*(const CMatrix &, const CVector &);
template RVector operator*(const RMatrix &, const RVector &);
template CMatrix kron(const CMatrix &, const CMatrix &);
template RMatrix kron(const RMatrix &, const RMatrix &);

CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        for (std::size_t j = 0; j < b.size(); j++) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

CMatrix outer(const CVector &ket, const CVector &bra) {
    CMatrix out(ket.size(), bra.size());
    for (std::size_t r = 0; r < ket.size(); r++) {
        for (std::size_t c = 0; c < bra.size(); c++) {
            out(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return out;
}

CMatrix projector(const CVector &v) {
    return outer(v, v);
}

cplx inner(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        throw DimensionError("inner: length mismatch");
    }
    cplx s{};
    for (std::size_t k = 0; k < a.size(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

double norm(const CVector &v) {
    double s = 0;
    for (const auto &x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

CVector normalized(const CVector &v) {
    double n = norm(v);
    if (n == 0) {
        throw NumericalError("normalized: zero vector");
    }
    CVector out(v);
    for (auto &x : out) {
        x /= n;
    }
    return out;
}

cplx expectation(const CMatrix &a, const CVector &v) {
    if (a.rows() != v.size() || a.cols() != v.size()) {
        throw DimensionError("expectation: dimension mismatch");
    }
    cplx s{};
    for (std::size_t r = 0; r < a.rows(); r++) {
        cplx row{};
        for (std::size_t c = 0; c < a.cols(); c++) {
            row += a(r, c) * v[c];
        }
        s += std::conj(v[r]) * row;
    }
    return s;
}

cplx trace_product(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("trace_product: dimension mismatch");
    }
    cplx s{};
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            s += a(r, c) * b(c, r);
        }
    }
    return s;
}

CMatrix commutator(const CMatrix &a, const CMatrix &b) {
    return a * b - b * a;
}

CMatrix anticommutator(const CMatrix &a, const CMatrix &b) {
    return a * b + b * a;
}

double hermiticity_gap(const CMatrix &a) {
    if (!a.is_square()) {
        throw DimensionError("hermiticity_gap: matrix is not square");
    }
    double s = 0;
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            s += std::norm(a(r, c) - std::conj(a(c, r)));
        }
    }
    return std::sqrt(s);
}

CMatrix hermitian_part(const CMatrix &a) {
    CMatrix out = a + a.adjoint();
    out *= cplx(0.5);
    return out;
}

RMatrix real_part(const CMatrix &a) {
    RMatrix out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.data().size(); k++) {
        out.data()[k] = a.data()[k].real();
    }
    return out;
}

CMatrix to_complex(const RMatrix &a) {
    CMatrix out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.data().size(); k++) {
        out.data()[k] = a.data()[k];
    }
    return out;
}

RMatrix symmetrized(const RMatrix &a) {
    RMatrix out = a + a.transpose();
    out *= 0.5;
    return out;
}

CVector basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionError("basis_vector: index out of range");
    }
    CVector v(dim);
    v[index] = 1;
    return v;
}

namespace {

void put(std::ostream &out, double x) {
    out << x;
}
void put(std::ostream &out, const cplx &x) {
    out << x.real() << (x.imag() < 0 ? "-" : "+") << std::abs(x.imag()) << "i";
}

template <typename T>
std::string render(const Matrix<T> &m, int precision) {
    std::ostringstream ss;
    ss << std::setprecision(precision);
    for (std::size_t r = 0; r < m.rows(); r++) {
        ss << (r == 0 ? "[" : " ");
        for (std::size_t c = 0; c < m.cols(); c++) {
            if (c) {
                ss << ", ";
            }
            put(ss, m(r, c));
        }
        ss << (r + 1 == m.rows() ? "]" : "\n");
    }
    return ss.str();
}

}  // namespace

std::string to_string(const CMatrix &m, int precision) {
    return render(m, precision);
}

std::string to_string(const RMatrix &m, int precision) {
    return render(m, precision);
}

}  // namespace rmetro
