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

// The two closed-form matrices built from the zeros z of a monic polynomial
// whose coefficients c are Hermite zeros, and the checks that their spectra are
// {1, 2, ..., N} (first kind) and {1, 4, ..., N^2} (second kind).
//
//   M_nm = -[prod_{l != n} (z_n - z_l)]^-1
//          * sum_j z_n^(N-j) [ w_jm + k sum_{s != j} (w_jm - w_sm) / (c_j - c_s)^p ]
//
// with (k, p) = (1, 2) for the first kind and (6, 4) for the second, and
// w_jm = (-1)^j [delta_j1 + sigma_{m,j}(z)] the derivative of coefficient j
// with respect to zero m.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/dense_matrix.hpp"
#include "dioph/eigensolver.hpp"
#include "dioph/error.hpp"
#include "dioph/hermite.hpp"
#include "dioph/polynomial.hpp"

namespace dioph {

enum class MatrixKind { M1, M2 };

constexpr std::string_view to_string(MatrixKind kind) noexcept { return kind == MatrixKind::M1 ? "M1" : "M2"; }

inline MatrixKind parse_matrix_kind(std::string_view s) {
  if (s == "M1" || s == "m1" || s == "1") return MatrixKind::M1;
  if (s == "M2" || s == "m2" || s == "2") return MatrixKind::M2;
  detail::fail(ErrorKind::InvalidArgument, "unknown matrix kind '" + std::string(s) + "'");
}

/// Separation below which a matrix is flagged as ill-conditioned.
inline constexpr double kConditioningThreshold = 1e-6;

/// Entry (j, m), 0-based, holds w_{j+1, m+1}. Row 0 is identically -1.
template <std::floating_point T>
DenseMatrix<T> w_table(const ZeroVector<T>& z) {
  const std::size_t n = z.size();
  DenseMatrix<T> w(n);
  ComplexVector<T> rest;
  rest.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    rest.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (k != m) rest.push_back(z[k]);
    }
    const auto e = elementary_symmetric<T>(rest);
    for (std::size_t j = 1; j <= n; ++j) {
      // delta_j1 + sigma_{m,j} == sigma_{j-1} of the remaining zeros
      const std::complex<T> s = e[j - 1];
      w(j - 1, m) = (j % 2 == 0) ? s : -s;
    }
  }
  return w;
}

template <std::floating_point T = double>
struct DiophantineMatrix {
  MatrixKind kind = MatrixKind::M1;
  std::size_t n = 0;
  DenseMatrix<T> entries;
  std::optional<PermutationId> source_perm;
  T zero_separation = 0;
  T coeff_separation = 0;

  bool conditioning_warning() const noexcept {
    return zero_separation < static_cast<T>(kConditioningThreshold) ||
           coeff_separation < static_cast<T>(kConditioningThreshold);
  }
};

template <std::floating_point T>
T expected_trace(MatrixKind kind, std::size_t n) noexcept {
  const T N = static_cast<T>(n);
  return kind == MatrixKind::M1 ? N * (N + 1) / 2 : N * (N + 1) * (2 * N + 1) / 6;
}

template <std::floating_point T>
T expected_determinant(MatrixKind kind, std::size_t n) noexcept {
  T f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<T>(k);
  return kind == MatrixKind::M1 ? f : f * f;
}

/// 1..N or 1..N^2
inline std::vector<long long> expected_spectrum(MatrixKind kind, std::size_t n) {
  std::vector<long long> out(n);
  for (std::size_t m = 1; m <= n; ++m) {
    const auto v = static_cast<long long>(m);
    out[m - 1] = kind == MatrixKind::M1 ? v : v * v;
  }
  return out;
}

template <std::floating_point T>
DiophantineMatrix<T> build_matrix(MatrixKind kind, const ZeroVector<T>& z, std::span<const std::complex<T>> c,
                                  std::optional<PermutationId> perm = std::nullopt) {
  const std::size_t n = z.size();
  if (c.size() != n) detail::fail(ErrorKind::DimensionMismatch, "need as many coefficients as zeros");
  detail::require_finite<T>(c, "coefficients");

  DiophantineMatrix<T> out;
  out.kind = kind;
  out.n = n;
  out.source_perm = std::move(perm);
  out.zero_separation = z.separation();
  out.coeff_separation = min_separation<T>(c);
  if (n > 1 && (out.zero_separation == 0 || out.coeff_separation == 0)) {
    detail::fail(ErrorKind::SingularConfiguration, "coincident zeros or coefficients");
  }

  const T weight = kind == MatrixKind::M1 ? T(1) : T(6);
  const int power = kind == MatrixKind::M1 ? 2 : 4;

  // inverse powers (c_j - c_s)^-p
  DenseMatrix<T> inv(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s == j) continue;
      const std::complex<T> d2 = (c[j] - c[s]) * (c[j] - c[s]);
      inv(j, s) = T(1) / (power == 2 ? d2 : d2 * d2);
    }
  }

  // a(j, m) = w_jm + k sum_{s != j} (w_jm - w_sm) (c_j - c_s)^-p
  const DenseMatrix<T> w = w_table(z);
  DenseMatrix<T> a(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) {
      std::complex<T> coupling{0};
      for (std::size_t s = 0; s < n; ++s) {
        if (s != j) coupling += (w(j, m) - w(s, m)) * inv(j, s);
      }
      a(j, m) = w(j, m) + weight * coupling;
    }
  }

  out.entries = DenseMatrix<T>(n);
  for (std::size_t row = 0; row < n; ++row) {
    const std::complex<T> zn = z[row];
    std::complex<T> denom{1};
    for (std::size_t l = 0; l < n; ++l) {
      if (l != row) denom *= zn - z[l];
    }
    for (std::size_t m = 0; m < n; ++m) {
      // Horner over j: sum_j z_n^(N-j) a(j, m)
      std::complex<T> acc{0};
      for (std::size_t j = 0; j < n; ++j) acc = acc * zn + a(j, m);
      out.entries(row, m) = -acc / denom;
    }
  }
  return out;
}

template <std::floating_point T>
DiophantineMatrix<T> build_matrix(MatrixKind kind, const ZeroVector<T>& z, std::span<const T> c,
                                  std::optional<PermutationId> perm = std::nullopt) {
  const ComplexVector<T> cc(c.begin(), c.end());
  return build_matrix<T>(kind, z, std::span<const std::complex<T>>(cc), std::move(perm));
}

template <std::floating_point T>
DiophantineMatrix<T> build_m1(const ZeroVector<T>& z, std::span<const T> c,
                              std::optional<PermutationId> perm = std::nullopt) {
  return build_matrix<T>(MatrixKind::M1, z, c, std::move(perm));
}

template <std::floating_point T>
DiophantineMatrix<T> build_m2(const ZeroVector<T>& z, std::span<const T> c,
                              std::optional<PermutationId> perm = std::nullopt) {
  return build_matrix<T>(MatrixKind::M2, z, c, std::move(perm));
}

/// Wrap an arbitrary matrix (e.g. hand-built) so it can go through spectrum_check.
template <std::floating_point T>
DiophantineMatrix<T> wrap_matrix(MatrixKind kind, DenseMatrix<T> entries) {
  DiophantineMatrix<T> out;
  out.kind = kind;
  out.n = entries.size();
  out.entries = std::move(entries);
  out.zero_separation = std::numeric_limits<T>::infinity();
  out.coeff_separation = std::numeric_limits<T>::infinity();
  return out;
}

enum class CheckStatus { Pass, Fail, Inconclusive };

constexpr std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

template <std::floating_point T = double>
struct SpectrumReport {
  MatrixKind kind = MatrixKind::M1;
  ComplexVector<T> eigenvalues;  // sorted by real part
  std::vector<long long> expected;
  T max_deviation = 0;
  bool pass = false;
  /// Fail downgraded to Inconclusive when the source configuration is ill-conditioned.
  CheckStatus status = CheckStatus::Fail;
  std::optional<PermutationId> perm;
  T zero_separation = 0;
  T coeff_separation = 0;

  friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

template <std::floating_point T>
SpectrumReport<T> spectrum_check(const DiophantineMatrix<T>& m, T tol, const EigenOptions<T>& eig = {}) {
  detail::require(tol > 0, ErrorKind::InvalidArgument, "spectrum tolerance must be positive");
  SpectrumReport<T> r;
  r.kind = m.kind;
  r.perm = m.source_perm;
  r.zero_separation = m.zero_separation;
  r.coeff_separation = m.coeff_separation;
  r.eigenvalues = sorted_by_real_part(eigenvalues(m.entries, eig).eigenvalues);
  r.expected = expected_spectrum(m.kind, m.n);
  for (std::size_t k = 0; k < m.n; ++k) {
    r.max_deviation = std::max(r.max_deviation, std::abs(r.eigenvalues[k] - static_cast<T>(r.expected[k])));
  }
  r.pass = r.max_deviation <= tol;
  r.status = r.pass ? CheckStatus::Pass : (m.conditioning_warning() ? CheckStatus::Inconclusive : CheckStatus::Fail);
  return r;
}

/// max |build(P z) - P build(z) P^T| for the transposition P of 0-based positions (a, b).
template <std::floating_point T>
T permutation_similarity_check(const ZeroVector<T>& z, std::span<const T> c, MatrixKind kind, std::size_t a,
                               std::size_t b) {
  if (!(a < b && b < z.size())) detail::fail(ErrorKind::IndexOutOfRange, "transposition requires a < b < N");
  const auto original = build_matrix<T>(kind, z, c);
  const auto swapped = build_matrix<T>(kind, z.swapped(a, b), c);
  return max_abs_difference(swapped.entries, swap_rows_and_columns(original.entries, a, b));
}

}  // namespace dioph
