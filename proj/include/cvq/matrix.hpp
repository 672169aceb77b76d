// Copyright 2026 The cvq Authors
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

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cvq/common.hpp"

namespace cvq {

/// Dense row-major real matrix. Everything in this library is a handful of
/// modes, so no attempt is made at sparsity or blocking.
class RealMatrix {
 public:
  RealMatrix() = default;

  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {
    if (rows == 0 || cols == 0) fail_arg("RealMatrix: dimensions must be positive");
  }

  static RealMatrix identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RealMatrix transposed() const {
    RealMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (double x : a_) s = std::max(s, std::abs(x));
    return s;
  }

  RealMatrix operator+(const RealMatrix& o) const {
    check_same_shape(o);
    RealMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
  }

  RealMatrix operator-(const RealMatrix& o) const {
    check_same_shape(o);
    RealMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
  }

  RealMatrix operator*(double c) const {
    RealMatrix r = *this;
    for (double& x : r.a_) x *= c;
    return r;
  }

  RealMatrix operator*(const RealMatrix& o) const {
    if (cols_ != o.rows_) fail_arg("RealMatrix: inner dimensions do not match");
    RealMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  static RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix r(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
    return r;
  }

 private:
  void check_same_shape(const RealMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail_arg("RealMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

inline std::vector<double> operator*(const RealMatrix& m, std::span<const double> v) {
  if (m.cols() != v.size()) fail_arg("RealMatrix: vector length mismatch");
  std::vector<double> r(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

/// Real symmetric matrix. Symmetry is enforced on construction and on every
/// write, so entries (i,j) and (j,i) are bitwise identical.
class SymMatrix {
 public:
  SymMatrix() = default;

  explicit SymMatrix(std::size_t dim, double fill = 0.0) : m_(dim, dim, fill) {}

  /// Symmetrizes a square matrix as (X + X^T)/2.
  static SymMatrix from(const RealMatrix& x) {
    if (x.rows() != x.cols()) fail_arg("SymMatrix: matrix must be square");
    SymMatrix s(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = i; j < x.cols(); ++j) {
        const double v = 0.5 * (x(i, j) + x(j, i));
        s.m_(i, j) = v;
        s.m_(j, i) = v;
      }
    return s;
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.m_(i, i) = 1.0;
    return s;
  }

  static SymMatrix scaled_identity(std::size_t n, double c) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.m_(i, i) = c;
    return s;
  }

  static SymMatrix diagonal(std::span<const double> d) {
    SymMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.m_(i, i) = d[i];
    return s;
  }

  std::size_t dim() const { return m_.rows(); }

  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const RealMatrix& to_real() const { return m_; }

  double frobenius_norm() const { return m_.frobenius_norm(); }
  double max_abs() const { return m_.max_abs(); }

  SymMatrix operator+(const SymMatrix& o) const { return wrap(m_ + o.m_); }
  SymMatrix operator-(const SymMatrix& o) const { return wrap(m_ - o.m_); }
  SymMatrix operator*(double c) const { return wrap(m_ * c); }

  static SymMatrix direct_sum(const SymMatrix& a, const SymMatrix& b) {
    return wrap(RealMatrix::direct_sum(a.m_, b.m_));
  }

 private:
  static SymMatrix wrap(RealMatrix m) {
    SymMatrix s;
    s.m_ = std::move(m);
    return s;
  }

  RealMatrix m_;
};

}  // namespace cvq
