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

// Dense complex non-symmetric eigenvalues: Householder reduction to upper
// Hessenberg form followed by single-shift complex QR with Wilkinson shifts.
// Eigenvectors come from inverse iteration, which is all the simple, well
// separated spectra handled here need.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dioph/dense_matrix.hpp"
#include "dioph/error.hpp"
#include "dioph/polynomial.hpp"

namespace dioph {

inline constexpr std::size_t kMaxEigenDimension = 64;

template <std::floating_point T = double>
struct EigenOptions {
  /// Deflate when |h(k+1,k)| <= tol * (|h(k,k)| + |h(k+1,k+1)|).
  T tol = std::numeric_limits<T>::epsilon();
  /// Total QR sweeps allowed; 0 selects 60 * n.
  int max_sweeps = 0;
  /// One diagonal-scaling pass before reduction.
  bool balance = true;
};

template <std::floating_point T = double>
struct EigenResult {
  ComplexVector<T> eigenvalues;
  std::optional<DenseMatrix<T>> eigenvectors;  // columns are unit-norm eigenvectors
  int iterations = 0;
  bool converged = false;
};

template <std::floating_point T = double>
struct HessenbergForm {
  DenseMatrix<T> h;
  DenseMatrix<T> q;  // unitary, M = Q H Q*
};

template <std::floating_point T>
HessenbergForm<T> hessenberg_reduce(const DenseMatrix<T>& m) {
  const std::size_t n = m.size();
  DenseMatrix<T> a = m;
  DenseMatrix<T> q = DenseMatrix<T>::identity(n);
  std::vector<std::complex<T>> v(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    T norm2 = 0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(a(i, k));
    const T norm = std::sqrt(norm2);
    if (norm == 0) continue;
    const std::complex<T> x0 = a(k + 1, k);
    const std::complex<T> phase = std::abs(x0) == 0 ? std::complex<T>{1} : x0 / std::abs(x0);
    const std::complex<T> alpha = -phase * norm;

    std::fill(v.begin(), v.end(), std::complex<T>{0});
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    T vnorm2 = 0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0) continue;
    const T scale = T(2) / vnorm2;

    // a <- (I - s v v*) a
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<T> dot{0};
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= scale;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * dot;
    }
    // a <- a (I - s v v*), q <- q (I - s v v*)
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<T> dot_a{0};
      std::complex<T> dot_q{0};
      for (std::size_t j = k + 1; j < n; ++j) {
        dot_a += a(i, j) * v[j];
        dot_q += q(i, j) * v[j];
      }
      dot_a *= scale;
      dot_q *= scale;
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) -= dot_a * std::conj(v[j]);
        q(i, j) -= dot_q * std::conj(v[j]);
      }
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0;
  }
  return {std::move(a), std::move(q)};
}

namespace detail {

// One pass of power-of-two diagonal scaling; a similarity transform.
template <std::floating_point T>
void balance_once(DenseMatrix<T>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    T row = 0;
    T col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      row += std::abs(a(i, j));
      col += std::abs(a(j, i));
    }
    if (row == 0 || col == 0) continue;
    T f = 1;
    T c = col;
    const T sum = col + row;
    T g = row / 2;
    while (c < g) {
      f *= 2;
      c *= 4;
    }
    g = row * 2;
    while (c >= g) {
      f /= 2;
      c /= 4;
    }
    if ((c + row) / f < T(0.95) * sum) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
      for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
    }
  }
}

template <std::floating_point T>
std::complex<T> wilkinson_shift(std::complex<T> a, std::complex<T> b, std::complex<T> c, std::complex<T> d) {
  const std::complex<T> half = (a - d) / T(2);
  const std::complex<T> disc = std::sqrt(half * half + b * c);
  const std::complex<T> mu1 = (a + d) / T(2) + disc;
  const std::complex<T> mu2 = (a + d) / T(2) - disc;
  return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

}  // namespace detail

template <std::floating_point T>
EigenResult<T> eigenvalues(const DenseMatrix<T>& m, const EigenOptions<T>& options = {}) {
  const std::size_t n = m.size();
  detail::require(n >= 1, ErrorKind::InvalidArgument, "eigenvalues of an empty matrix");
  if (n > kMaxEigenDimension) detail::fail(ErrorKind::InvalidArgument, "eigensolver limited to n <= 64");
  detail::require(options.tol > 0, ErrorKind::InvalidArgument, "eigen tolerance must be positive");
  detail::require_finite<T>(m.data(), "matrix entries");

  DenseMatrix<T> a = m;
  if (options.balance) detail::balance_once(a);
  DenseMatrix<T> h = hessenberg_reduce(a).h;

  const int max_sweeps = options.max_sweeps > 0 ? options.max_sweeps : 60 * static_cast<int>(n);
  EigenResult<T> result;
  result.eigenvalues.assign(n, std::complex<T>{0});

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int since_deflation = 0;
  while (hi >= 0) {
    if (hi == 0) {
      result.eigenvalues[0] = h(0, 0);
      break;
    }
    std::ptrdiff_t lo = hi;
    for (; lo > 0; --lo) {
      const auto k = static_cast<std::size_t>(lo);
      if (std::abs(h(k, k - 1)) <= options.tol * (std::abs(h(k - 1, k - 1)) + std::abs(h(k, k)))) {
        h(k, k - 1) = 0;
        break;
      }
    }
    const auto uhi = static_cast<std::size_t>(hi);
    if (lo == hi) {
      result.eigenvalues[uhi] = h(uhi, uhi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (result.iterations >= max_sweeps) {
      detail::fail(ErrorKind::NonConvergence, "QR iteration exhausted " + std::to_string(max_sweeps) + " sweeps");
    }
    ++result.iterations;
    ++since_deflation;

    const auto ulo = static_cast<std::size_t>(lo);
    std::complex<T> shift;
    if (since_deflation % 11 == 0) {
      // exceptional shift to break cycles
      shift = h(uhi, uhi) + T(0.75) * std::abs(h(uhi, uhi - 1));
    } else {
      shift = detail::wilkinson_shift(h(uhi - 1, uhi - 1), h(uhi - 1, uhi), h(uhi, uhi - 1), h(uhi, uhi));
    }

    for (std::size_t k = ulo; k <= uhi; ++k) h(k, k) -= shift;
    // QR of the active block by Givens rotations G_k acting on rows k, k+1.
    std::vector<std::complex<T>> ga(uhi - ulo);
    std::vector<std::complex<T>> gb(uhi - ulo);
    std::vector<T> gr(uhi - ulo);
    for (std::size_t k = ulo; k < uhi; ++k) {
      const std::complex<T> x = h(k, k);
      const std::complex<T> y = h(k + 1, k);
      const T r = std::hypot(std::abs(x), std::abs(y));
      const std::size_t g = k - ulo;
      ga[g] = x;
      gb[g] = y;
      gr[g] = r;
      if (r == 0) continue;
      for (std::size_t j = k; j <= uhi; ++j) {
        const std::complex<T> u = h(k, j);
        const std::complex<T> w = h(k + 1, j);
        h(k, j) = (std::conj(x) * u + std::conj(y) * w) / r;
        h(k + 1, j) = (-y * u + x * w) / r;
      }
    }
    // R Q: apply G_k^* from the right on columns k, k+1.
    for (std::size_t k = ulo; k < uhi; ++k) {
      const std::size_t g = k - ulo;
      if (gr[g] == 0) continue;
      const std::complex<T> x = ga[g];
      const std::complex<T> y = gb[g];
      const T r = gr[g];
      const std::size_t last = std::min(k + 2, uhi);
      for (std::size_t i = ulo; i <= last; ++i) {
        const std::complex<T> u = h(i, k);
        const std::complex<T> w = h(i, k + 1);
        h(i, k) = (u * x + w * y) / r;
        h(i, k + 1) = (-u * std::conj(y) + w * std::conj(x)) / r;
      }
    }
    for (std::size_t k = ulo; k <= uhi; ++k) h(k, k) += shift;
  }
  result.converged = true;
  return result;
}

/// Unit-norm eigenvectors for the given simple eigenvalues by inverse iteration.
/// Each column's largest component is rotated to be real and positive.
template <std::floating_point T>
EigenResult<T> eigenvectors(const DenseMatrix<T>& m, const ComplexVector<T>& values) {
  const std::size_t n = m.size();
  if (values.size() != n) detail::fail(ErrorKind::DimensionMismatch, "need one eigenvalue per row");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const T scale = std::max(std::abs(values[i]), std::abs(values[j]));
      if (!(std::abs(values[i] - values[j]) > T(1e-6) * scale)) {
        detail::fail(ErrorKind::DegenerateSpectrum, "eigenvalues are not pairwise separated");
      }
    }
  }

  const T eps = std::numeric_limits<T>::epsilon();
  const T mnorm = std::max(m.frobenius_norm(), T(1));
  DenseMatrix<T> vectors(n);
  EigenResult<T> result;
  result.eigenvalues = values;

  for (std::size_t col = 0; col < n; ++col) {
    DenseMatrix<T> shifted = m;
    const std::complex<T> lambda = values[col] + std::complex<T>(16 * eps * mnorm, 0);
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    auto lu = lu_decompose(shifted);
    for (std::size_t i = 0; i < n; ++i) {
      if (lu.lu(i, i) == std::complex<T>{0}) lu.lu(i, i) = eps * mnorm;
    }
    lu.singular = false;

    ComplexVector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::complex<T>(1, T(0.5) * static_cast<T>(i) / static_cast<T>(n));
    T residual = std::numeric_limits<T>::infinity();
    for (int sweep = 0; sweep < 6; ++sweep) {
      x = lu_solve(lu, std::span<const std::complex<T>>(x));
      T norm = 0;
      for (const auto& xi : x) norm += std::norm(xi);
      norm = std::sqrt(norm);
      if (!(norm > 0) || !std::isfinite(norm)) detail::fail(ErrorKind::NonConvergence, "inverse iteration broke down");
      for (auto& xi : x) xi /= norm;
      ++result.iterations;
      const auto mx = m.apply(x);
      residual = 0;
      for (std::size_t i = 0; i < n; ++i) residual += std::norm(mx[i] - values[col] * x[i]);
      residual = std::sqrt(residual);
      if (sweep >= 1 && residual <= T(1e-10) * mnorm) break;
    }
    if (!(residual <= T(1e-8) * mnorm)) {
      detail::fail(ErrorKind::NonConvergence, "inverse iteration residual above 1e-8 ||M||");
    }
    std::size_t big = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(x[i]) > std::abs(x[big])) big = i;
    }
    const std::complex<T> phase = std::abs(x[big]) / x[big];
    for (std::size_t i = 0; i < n; ++i) vectors(i, col) = x[i] * phase;
  }
  result.eigenvectors = std::move(vectors);
  result.converged = true;
  return result;
}

/// Frobenius companion matrix whose eigenvalues are the zeros of p.
template <std::floating_point T>
DenseMatrix<T> companion_matrix(const MonicPolynomial<T>& p) {
  const std::size_t n = p.degree();
  DenseMatrix<T> c(n);
  for (std::size_t j = 0; j < n; ++j) c(0, j) = -p[j];
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  return c;
}

/// Sort by real part, ties by imaginary part.
template <std::floating_point T>
ComplexVector<T> sorted_by_real_part(ComplexVector<T> values) {
  sort_lexicographic(values);
  return values;
}

}  // namespace dioph
