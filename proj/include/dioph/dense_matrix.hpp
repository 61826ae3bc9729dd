//==============================================================================
//
// Copyright 2026 The dioph Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
//==============================================================================

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/polynomial.hpp"

namespace dioph {

/// Square complex matrix, row-major.
template <std::floating_point T = double>
class DenseMatrix {
 public:
  using value_type = std::complex<T>;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, value_type{0}) {}
  DenseMatrix(std::size_t n, ComplexVector<T> row_major) : n_(n), data_(std::move(row_major)) {
    if (data_.size() != n * n) detail::fail(ErrorKind::DimensionMismatch, "row-major data is not n*n");
    detail::require_finite<T>(data_, "matrix entries");
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
  }

  std::size_t size() const noexcept { return n_; }

  value_type& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<const value_type> data() const noexcept { return data_; }
  std::span<value_type> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const value_type> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  DenseMatrix adjoint() const {
    DenseMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
  }

  value_type trace() const noexcept {
    value_type t{0};
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  T frobenius_norm() const noexcept {
    T s = 0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
  }

  T max_abs() const noexcept {
    T best = 0;
    for (const auto& x : data_) best = std::max(best, std::abs(x));
    return best;
  }

  ComplexVector<T> apply(std::span<const value_type> v) const {
    if (v.size() != n_) detail::fail(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
    ComplexVector<T> out(n_, value_type{0});
    for (std::size_t i = 0; i < n_; ++i) {
      value_type acc{0};
      for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.n_ != b.n_) detail::fail(ErrorKind::DimensionMismatch, "matrix product size mismatch");
    DenseMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t k = 0; k < a.n_; ++k) {
        const value_type aik = a(i, k);
        for (std::size_t j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.n_ != b.n_) detail::fail(ErrorKind::DimensionMismatch, "matrix difference size mismatch");
    DenseMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
    return out;
  }

  friend DenseMatrix operator*(value_type s, const DenseMatrix& a) {
    DenseMatrix out = a;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  ComplexVector<T> data_;
};

template <std::floating_point T>
T max_abs_difference(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  return (a - b).max_abs();
}

/// P A P^T for the transposition P exchanging rows/columns a and b.
template <std::floating_point T>
DenseMatrix<T> swap_rows_and_columns(const DenseMatrix<T>& m, std::size_t a, std::size_t b) {
  const std::size_t n = m.size();
  if (a >= n || b >= n) detail::fail(ErrorKind::IndexOutOfRange, "transposition index out of range");
  auto idx = [&](std::size_t i) { return i == a ? b : (i == b ? a : i); };
  DenseMatrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(idx(i), idx(j));
  }
  return out;
}

/// LU factorisation with partial pivoting, packed L (unit diagonal) and U.
template <std::floating_point T>
struct LuFactors {
  DenseMatrix<T> lu;
  std::vector<std::size_t> pivots;
  int sign = 1;
  bool singular = false;
};

template <std::floating_point T>
LuFactors<T> lu_decompose(DenseMatrix<T> a) {
  const std::size_t n = a.size();
  LuFactors<T> f;
  f.pivots.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    T best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    f.pivots[k] = p;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      f.sign = -f.sign;
    }
    if (a(k, k) == std::complex<T>{0}) {
      f.singular = true;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const auto factor = a(i, k) / a(k, k);
      a(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

template <std::floating_point T>
std::complex<T> determinant(const DenseMatrix<T>& a) {
  const auto f = lu_decompose(a);
  if (f.singular) return std::complex<T>{0};
  std::complex<T> det{static_cast<T>(f.sign)};
  for (std::size_t i = 0; i < a.size(); ++i) det *= f.lu(i, i);
  return det;
}

template <std::floating_point T>
ComplexVector<T> lu_solve(const LuFactors<T>& f, std::span<const std::complex<std::type_identity_t<T>>> b) {
  const std::size_t n = f.lu.size();
  if (b.size() != n) detail::fail(ErrorKind::DimensionMismatch, "right-hand side size mismatch");
  if (f.singular) detail::fail(ErrorKind::SingularConfiguration, "singular matrix in linear solve");
  ComplexVector<T> x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k) std::swap(x[k], x[f.pivots[k]]);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

template <std::floating_point T>
ComplexVector<T> solve(const DenseMatrix<T>& a, std::span<const std::complex<std::type_identity_t<T>>> b) {
  return lu_solve(lu_decompose(a), b);
}

}  // namespace dioph
