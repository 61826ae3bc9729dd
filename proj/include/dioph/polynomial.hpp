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

// Complex monic polynomials, the Vieta map between zeros and coefficients,
// elementary symmetric functions and an Aberth-Ehrlich root finder.
//
// Coefficients follow the convention
//
//   p(z) = z^N + c_1 z^(N-1) + ... + c_N,      c_m = (-1)^m sigma_m(z_1..z_N)
//
// so coefficient index m and elementary-symmetric degree m line up.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "dioph/error.hpp"

namespace dioph {

template <std::floating_point T>
using ComplexVector = std::vector<std::complex<T>>;

namespace detail {

template <std::floating_point T>
bool is_finite(const std::complex<T>& x) noexcept {
  return std::isfinite(x.real()) && std::isfinite(x.imag());
}

template <std::floating_point T>
void require_finite(std::span<const std::complex<T>> xs, const char* what) {
  for (const auto& x : xs) {
    if (!is_finite(x)) fail(ErrorKind::InvalidArgument, std::string(what) + " contains a non-finite value");
  }
}

}  // namespace detail

/// Smallest pairwise distance |x_n - x_l|, n != l. Infinity for fewer than two points.
template <std::floating_point T>
T min_separation(std::span<const std::complex<T>> xs) noexcept {
  T best = std::numeric_limits<T>::infinity();
  for (std::size_t n = 0; n < xs.size(); ++n) {
    for (std::size_t l = n + 1; l < xs.size(); ++l) best = std::min(best, std::abs(xs[n] - xs[l]));
  }
  return best;
}

template <std::floating_point T>
T min_separation(std::span<const T> xs) noexcept {
  T best = std::numeric_limits<T>::infinity();
  for (std::size_t n = 0; n < xs.size(); ++n) {
    for (std::size_t l = n + 1; l < xs.size(); ++l) best = std::min(best, std::abs(xs[n] - xs[l]));
  }
  return best;
}

/// Monic polynomial of degree N >= 1 stored by its N non-leading coefficients.
template <std::floating_point T = double>
class MonicPolynomial {
 public:
  using value_type = std::complex<T>;

  explicit MonicPolynomial(ComplexVector<T> coefficients) : coefficients_(std::move(coefficients)) {
    detail::require(!coefficients_.empty(), ErrorKind::InvalidArgument, "monic polynomial needs degree >= 1");
    detail::require_finite<T>(coefficients_, "polynomial coefficients");
  }

  explicit MonicPolynomial(std::span<const T> real_coefficients)
      : MonicPolynomial(ComplexVector<T>(real_coefficients.begin(), real_coefficients.end())) {}

  std::size_t degree() const noexcept { return coefficients_.size(); }

  /// c_1 .. c_N; element 0 holds c_1.
  std::span<const value_type> coefficients() const noexcept { return coefficients_; }

  const value_type& operator[](std::size_t i) const { return coefficients_.at(i); }

  T max_coefficient_magnitude() const noexcept {
    T best = 0;
    for (const auto& c : coefficients_) best = std::max(best, std::abs(c));
    return best;
  }

  friend bool operator==(const MonicPolynomial&, const MonicPolynomial&) = default;

 private:
  ComplexVector<T> coefficients_;
};

/// Ordered zeros z_1..z_N. The order is meaningful: it indexes matrix rows.
template <std::floating_point T = double>
class ZeroVector {
 public:
  using value_type = std::complex<T>;

  explicit ZeroVector(ComplexVector<T> zeros) : zeros_(std::move(zeros)) {
    detail::require(!zeros_.empty(), ErrorKind::InvalidArgument, "zero vector needs N >= 1");
    detail::require_finite<T>(zeros_, "zero vector");
    separation_ = min_separation<T>(zeros_);
  }

  std::size_t size() const noexcept { return zeros_.size(); }
  std::span<const value_type> values() const noexcept { return zeros_; }
  const value_type& operator[](std::size_t i) const { return zeros_.at(i); }
  auto begin() const noexcept { return zeros_.begin(); }
  auto end() const noexcept { return zeros_.end(); }

  /// min_{n != l} |z_n - z_l|
  T separation() const noexcept { return separation_; }

  /// Copy with positions a and b exchanged.
  ZeroVector swapped(std::size_t a, std::size_t b) const {
    ComplexVector<T> out = zeros_;
    std::swap(out.at(a), out.at(b));
    return ZeroVector(std::move(out));
  }

  friend bool operator==(const ZeroVector& a, const ZeroVector& b) { return a.zeros_ == b.zeros_; }

 private:
  ComplexVector<T> zeros_;
  T separation_;
};

// ---------------------------------------------------------------------------
// Evaluation

template <std::floating_point T>
std::complex<T> evaluate(const MonicPolynomial<T>& p, std::complex<T> x) noexcept {
  std::complex<T> acc{1};
  for (const auto& c : p.coefficients()) acc = acc * x + c;
  return acc;
}

/// (p(x), p'(x)) by a single Horner pass.
template <std::floating_point T>
std::pair<std::complex<T>, std::complex<T>> evaluate_with_derivative(const MonicPolynomial<T>& p,
                                                                      std::complex<T> x) noexcept {
  std::complex<T> value{1};
  std::complex<T> slope{0};
  for (const auto& c : p.coefficients()) {
    slope = slope * x + value;
    value = value * x + c;
  }
  return {value, slope};
}

/// Horner evaluation of |z|^N + sum |c_m| |z|^(N-m); bounds the rounding error of evaluate().
template <std::floating_point T>
T evaluate_absolute(const MonicPolynomial<T>& p, T r) noexcept {
  T acc = 1;
  for (const auto& c : p.coefficients()) acc = acc * r + std::abs(c);
  return acc;
}

// ---------------------------------------------------------------------------
// Elementary symmetric functions

/// [sigma_0, sigma_1, ..., sigma_N] by incremental multiplication of linear factors.
template <std::floating_point T>
ComplexVector<T> elementary_symmetric(std::span<const std::complex<T>> z) {
  ComplexVector<T> e(z.size() + 1, std::complex<T>{0});
  e[0] = 1;
  for (std::size_t k = 0; k < z.size(); ++k) {
    for (std::size_t j = k + 1; j >= 1; --j) e[j] += z[k] * e[j - 1];
  }
  return e;
}

/// sigma_j(z); sigma_0 = 1 by the void-product convention.
template <std::floating_point T>
std::complex<T> sigma(int j, const ZeroVector<T>& z) {
  if (j < 0 || static_cast<std::size_t>(j) > z.size()) {
    detail::fail(ErrorKind::IndexOutOfRange, "sigma degree j must satisfy 0 <= j <= N");
  }
  return elementary_symmetric<T>(z.values())[static_cast<std::size_t>(j)];
}

/// sigma_j(z) by explicit enumeration of j-subsets. Only for cross-checking, N <= 20.
template <std::floating_point T>
std::complex<T> sigma_by_enumeration(int j, const ZeroVector<T>& z) {
  const std::size_t n = z.size();
  if (j < 0 || static_cast<std::size_t>(j) > n) {
    detail::fail(ErrorKind::IndexOutOfRange, "sigma degree j must satisfy 0 <= j <= N");
  }
  detail::require(n <= 20, ErrorKind::InvalidArgument, "subset enumeration limited to N <= 20");
  std::complex<T> sum{0};
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (__builtin_popcountl(mask) != j) continue;
    std::complex<T> prod{1};
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1UL << k)) prod *= z[k];
    }
    sum += prod;
  }
  return sum;
}

/// Sum of (j-1)-fold products of distinct components, none of them at position m
/// (0-based). The j = 1 case is zero by the void-sum convention, not one.
template <std::floating_point T>
std::complex<T> sigma_excluding(std::size_t m, int j, const ZeroVector<T>& z) {
  const std::size_t n = z.size();
  if (m >= n) detail::fail(ErrorKind::IndexOutOfRange, "sigma_excluding position m out of range");
  if (j < 1 || static_cast<std::size_t>(j) > n) {
    detail::fail(ErrorKind::IndexOutOfRange, "sigma_excluding degree j must satisfy 1 <= j <= N");
  }
  if (j == 1) return std::complex<T>{0};
  ComplexVector<T> rest;
  rest.reserve(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (k != m) rest.push_back(z[k]);
  }
  return elementary_symmetric<T>(rest)[static_cast<std::size_t>(j - 1)];
}

// ---------------------------------------------------------------------------
// Vieta map

template <std::floating_point T>
MonicPolynomial<T> poly_from_zeros(std::span<const std::complex<T>> z) {
  const auto e = elementary_symmetric<T>(z);
  ComplexVector<T> c(z.size());
  for (std::size_t m = 1; m <= z.size(); ++m) c[m - 1] = (m % 2 == 0) ? e[m] : -e[m];
  return MonicPolynomial<T>(std::move(c));
}

template <std::floating_point T>
MonicPolynomial<T> poly_from_zeros(const ZeroVector<T>& z) {
  return poly_from_zeros<T>(z.values());
}

/// Directional derivative of the coefficient vector under z -> z + eps v.
/// Forward-mode differentiation of the same product recurrence as poly_from_zeros.
template <std::floating_point T>
ComplexVector<T> vieta_jacobian_apply(std::span<const std::complex<T>> z, std::span<const std::complex<T>> v) {
  const std::size_t n = z.size();
  if (v.size() != n) detail::fail(ErrorKind::DimensionMismatch, "vieta_jacobian_apply: |v| != N");
  ComplexVector<T> e(n + 1, std::complex<T>{0});
  ComplexVector<T> de(n + 1, std::complex<T>{0});
  e[0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k + 1; j >= 1; --j) {
      de[j] += v[k] * e[j - 1] + z[k] * de[j - 1];
      e[j] += z[k] * e[j - 1];
    }
  }
  ComplexVector<T> w(n);
  for (std::size_t j = 1; j <= n; ++j) w[j - 1] = (j % 2 == 0) ? de[j] : -de[j];
  return w;
}

template <std::floating_point T>
ComplexVector<T> vieta_jacobian_apply(const ZeroVector<T>& z, std::span<const std::complex<std::type_identity_t<T>>> v) {
  return vieta_jacobian_apply<T>(z.values(), v);
}

// ---------------------------------------------------------------------------
// Root finding

template <std::floating_point T>
struct RootOptions {
  /// Residual bound: |p(z_n)| <= tol * (1 + max |c_m|), relaxed to the rounding
  /// floor of Horner evaluation where that is larger.
  T tol = T(1e-10);
  int max_iter = 500;
  /// Angular offset of the starting circle; change it to retry from perturbed starts.
  T start_angle = T(0.4);
};

/// Lexicographic (re, then im) ascending.
template <std::floating_point T>
void sort_lexicographic(ComplexVector<T>& zs) {
  std::sort(zs.begin(), zs.end(), [](const std::complex<T>& a, const std::complex<T>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

/// All N zeros by Aberth-Ehrlich simultaneous iteration followed by a Newton
/// polish of each root. Output sorted lexicographically for determinism.
template <std::floating_point T>
ZeroVector<T> roots(const MonicPolynomial<T>& p, const RootOptions<T>& options = {}) {
  detail::require(options.tol > 0, ErrorKind::InvalidArgument, "root tolerance must be positive");
  const std::size_t n = p.degree();
  if (n == 1) return ZeroVector<T>({-p[0]});

  const T radius = 1 + p.max_coefficient_magnitude();
  const T golden = std::numbers::pi_v<T> * (3 - std::sqrt(T(5)));
  ComplexVector<T> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(radius, options.start_angle + golden * static_cast<T>(k));

  const T eps = std::numeric_limits<T>::epsilon();
  bool converged = false;
  for (int iter = 0; iter < options.max_iter && !converged; ++iter) {
    T max_step = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto [value, slope] = evaluate_with_derivative(p, z[k]);
      if (value == std::complex<T>{0}) continue;
      std::complex<T> repulsion{0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repulsion += T(1) / (z[k] - z[j]);
      }
      const std::complex<T> ratio = value / slope;
      std::complex<T> step = ratio / (T(1) - ratio * repulsion);
      if (!detail::is_finite(step)) step = std::polar(eps * radius, T(k));
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(T(1), std::abs(z[k])));
    }
    converged = max_step <= 8 * eps;
  }

  const T bound = options.tol * (1 + p.max_coefficient_magnitude());
  for (auto& root : z) {
    for (int polish = 0; polish < 2; ++polish) {
      const auto [value, slope] = evaluate_with_derivative(p, root);
      if (slope == std::complex<T>{0}) break;
      const std::complex<T> candidate = root - value / slope;
      if (std::abs(evaluate(p, candidate)) <= std::abs(value)) root = candidate;
    }
    const T floor = T(16) * static_cast<T>(n) * eps * evaluate_absolute(p, std::abs(root));
    if (!(std::abs(evaluate(p, root)) <= std::max(bound, floor))) {
      detail::fail(ErrorKind::NonConvergence, "Aberth iteration did not reach the residual bound");
    }
  }
  sort_lexicographic(z);
  return ZeroVector<T>(std::move(z));
}

}  // namespace dioph
