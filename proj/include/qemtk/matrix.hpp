// Copyright 2026 The qemtk authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEMTK_MATRIX_HPP
#define QEMTK_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qemtk/errors.hpp"

namespace qemtk {

using complex_t = std::complex<double>;

//=========================================================================
// ComplexMatrix: dense complex matrix, row-major storage
//=========================================================================

class ComplexMatrix {
public:
  ComplexMatrix() = default;

  // Zero-filled rows x cols matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, complex_t(0.0, 0.0)) {}

  // Entries in row-major order; length must equal rows*cols and all
  // entries must be finite.
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::vector<complex_t> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw InvalidMatrix("entry count " + std::to_string(data_.size()) +
                          " does not match shape " + std::to_string(rows_) +
                          "x" + std::to_string(cols_));
    check_finite();
  }

  // Nested-list constructor, row by row.
  ComplexMatrix(std::initializer_list<std::initializer_list<complex_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
      if (r.size() != cols_)
        throw InvalidMatrix("ragged row in matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    check_finite();
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  complex_t &operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const complex_t &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<complex_t> &data() const { return data_; }
  std::vector<complex_t> &data() { return data_; }

  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = std::conj(data_[k]);
    return out;
  }

  ComplexMatrix adjoint() const { return conjugate().transpose(); }

  complex_t trace() const {
    if (!is_square()) throw ShapeMismatch("trace of non-square matrix");
    complex_t t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix &operator+=(const ComplexMatrix &other) {
    require_same_shape(other, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }

  ComplexMatrix &operator-=(const ComplexMatrix &other) {
    require_same_shape(other, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }

  ComplexMatrix &operator*=(complex_t s) {
    for (auto &v : data_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, complex_t s) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(complex_t s, ComplexMatrix a) {
    a *= s;
    return a;
  }

  friend ComplexMatrix operator*(const ComplexMatrix &a,
                                 const ComplexMatrix &b) {
    if (a.cols_ != b.rows_)
      throw ShapeMismatch("matrix product shape mismatch: " +
                          std::to_string(a.rows_) + "x" +
                          std::to_string(a.cols_) + " * " +
                          std::to_string(b.rows_) + "x" +
                          std::to_string(b.cols_));
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex_t aik = a(i, k);
        if (aik == complex_t(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  // Matrix-vector product (vector length = cols).
  std::vector<complex_t> apply(const std::vector<complex_t> &v) const {
    if (v.size() != cols_)
      throw ShapeMismatch("matrix-vector shape mismatch");
    std::vector<complex_t> out(rows_, complex_t(0.0, 0.0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto &v : data_) m = std::max(m, std::abs(v));
    return m;
  }

private:
  void check_finite() const {
    for (const auto &v : data_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InvalidMatrix("non-finite matrix entry");
  }

  void require_same_shape(const ComplexMatrix &other, const char *op) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw ShapeMismatch(std::string("shape mismatch in ") + op);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex_t> data_;
};

//=========================================================================
// Free helpers
//=========================================================================

// Kronecker product; composite index (x, y) of an m (x) n space is x*n + y.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const complex_t aij = a(i1, j1);
      if (aij == complex_t(0.0, 0.0)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          out(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
    }
  return out;
}

inline double frobenius_norm(const ComplexMatrix &a) {
  double s = 0.0;
  for (const auto &v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("max_abs_diff shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

inline bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b,
                         double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs_diff(a, b) <= tol;
}

inline double vector_norm2(const std::vector<complex_t> &v) {
  double s = 0.0;
  for (const auto &x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Hermitian part (A + A^dag)/2.
inline ComplexMatrix hermitian_part(const ComplexMatrix &a) {
  ComplexMatrix out = a;
  const ComplexMatrix ad = a.adjoint();
  out += ad;
  out *= complex_t(0.5, 0.0);
  return out;
}

inline double hermiticity_residual(const ComplexMatrix &a) {
  return max_abs_diff(a, a.adjoint());
}

} // namespace qemtk

#endif // QEMTK_MATRIX_HPP
