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

// Hermite polynomials H_N (physicists' normalisation), their zeros, the two
// algebraic equilibrium identities those zeros satisfy, and the N! coefficient
// orderings that turn the zeros into monic polynomials.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/polynomial.hpp"

namespace dioph {

inline constexpr int kMaxHermiteOrder = 30;
inline constexpr int kMaxRankableOrder = 20;

/// Coefficients of H_N in the monomial basis, index k holding the c^k term.
/// Built from the closed-form sum N! sum_k (-1)^k (2c)^(N-2k) / (k! (N-2k)!)
/// with exact integer ratios between consecutive terms.
template <std::floating_point T = double>
std::vector<T> hermite_coefficients(int n) {
  detail::require(n >= 1, ErrorKind::InvalidArgument, "Hermite order must be >= 1");
  if (n > 170) detail::fail(ErrorKind::Overflow, "Hermite order beyond double-precision factorial range");
  std::vector<T> coeffs(static_cast<std::size_t>(n) + 1, T(0));
  long double term = std::ldexp(1.0L, n);  // k = 0: 2^N
  coeffs[static_cast<std::size_t>(n)] = static_cast<T>(term);
  for (int k = 1; 2 * k <= n; ++k) {
    term = -term * static_cast<long double>(n - 2 * k + 2) * static_cast<long double>(n - 2 * k + 1) /
           (4.0L * static_cast<long double>(k));
    coeffs[static_cast<std::size_t>(n - 2 * k)] = static_cast<T>(term);
  }
  return coeffs;
}

/// (H_N(x), H_N'(x)) from the three-term recurrence H_{k+1} = 2x H_k - 2k H_{k-1}.
template <std::floating_point T>
std::pair<T, T> hermite_value_and_slope(int n, T x) noexcept {
  T prev = 1;     // H_0
  T curr = 2 * x; // H_1
  if (n == 0) return {prev, 0};
  for (int k = 1; k < n; ++k) {
    const T next = 2 * x * curr - 2 * static_cast<T>(k) * prev;
    prev = curr;
    curr = next;
  }
  return {curr, 2 * static_cast<T>(n) * prev};
}

/// max_m | c_m - sum_{l != m} 1/(c_m - c_l) |
template <std::floating_point T>
T residual_first_order(std::span<const T> c) {
  T worst = 0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    T sum = 0;
    for (std::size_t l = 0; l < c.size(); ++l) {
      if (l == m) continue;
      if (c[m] == c[l]) detail::fail(ErrorKind::DivisionByZero, "coincident entries in residual_first_order");
      sum += T(1) / (c[m] - c[l]);
    }
    worst = std::max(worst, std::abs(c[m] - sum));
  }
  return worst;
}

/// max_m | -c_m + 2 sum_{l != m} (c_m - c_l)^-3 |
template <std::floating_point T>
T residual_second_order(std::span<const T> c) {
  T worst = 0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    T sum = 0;
    for (std::size_t l = 0; l < c.size(); ++l) {
      if (l == m) continue;
      if (c[m] == c[l]) detail::fail(ErrorKind::DivisionByZero, "coincident entries in residual_second_order");
      const T d = c[m] - c[l];
      sum += T(1) / (d * d * d);
    }
    worst = std::max(worst, std::abs(-c[m] + 2 * sum));
  }
  return worst;
}

template <std::floating_point T = double>
struct HermiteZeros {
  int order = 0;
  std::vector<T> zeros;  // ascending
  T residual_first = 0;
  T residual_second = 0;
};

namespace detail {

// Number of eigenvalues below x of the Jacobi matrix of H_N (zero diagonal,
// off-diagonal sqrt(k/2)), by Sturm sequence.
template <std::floating_point T>
int jacobi_count_below(int n, T x) noexcept {
  int count = 0;
  T q = -x;
  if (q < 0) ++count;
  for (int k = 1; k < n; ++k) {
    const T b2 = static_cast<T>(k) / 2;
    if (q == 0) q = std::numeric_limits<T>::epsilon() * (std::abs(x) + 1);
    q = -x - b2 / q;
    if (q < 0) ++count;
  }
  return count;
}

}  // namespace detail

/// Ascending zeros of H_N: eigenvalues of the symmetric tridiagonal Jacobi
/// matrix (bisection on Sturm counts), one Newton step on the recurrence, then
/// exact antisymmetrisation about zero.
template <std::floating_point T = double>
HermiteZeros<T> hermite_zeros(int n) {
  if (n < 2 || n > kMaxHermiteOrder) {
    detail::fail(ErrorKind::InvalidArgument, "hermite_zeros requires 2 <= N <= " + std::to_string(kMaxHermiteOrder));
  }
  const T bound = 2 * std::sqrt(static_cast<T>(n) / 2) + 1;
  const T eps = std::numeric_limits<T>::epsilon();

  std::vector<T> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    T lo = -bound;
    T hi = bound;
    for (int it = 0; it < 400 && hi - lo > 2 * eps * std::max(T(1), std::abs(lo) + std::abs(hi)); ++it) {
      const T mid = (lo + hi) / 2;
      if (detail::jacobi_count_below(n, mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    T root = (lo + hi) / 2;
    const auto [value, slope] = hermite_value_and_slope(n, root);
    if (slope != 0) root -= value / slope;
    x[static_cast<std::size_t>(k)] = root;
  }

  // Zeros come in +-pairs; average each pair and pin the middle zero for odd N.
  for (int k = 0; k < n / 2; ++k) {
    auto& a = x[static_cast<std::size_t>(k)];
    auto& b = x[static_cast<std::size_t>(n - 1 - k)];
    const T half = (b - a) / 2;
    a = -half;
    b = half;
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0;

  HermiteZeros<T> out;
  out.order = n;
  out.zeros = std::move(x);
  out.residual_first = residual_first_order<T>(out.zeros);
  out.residual_second = residual_second_order<T>(out.zeros);
  if (!(out.residual_first < T(1e-10) && out.residual_second < T(1e-10))) {
    detail::fail(ErrorKind::NonConvergence, "Hermite zeros fail the equilibrium identities at N = " + std::to_string(n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orderings

/// One assignment of the ascending Hermite zeros to coefficient slots.
/// `word` is a permutation of 1..N (1-based, as printed in reports): slot m
/// receives zero number word[m-1]. `ordinal` is the 1-based lexicographic rank
/// of `word`, or 0 when N! does not fit in 64 bits (N > 20).
struct PermutationId {
  std::size_t n = 0;
  std::vector<std::size_t> word;
  std::uint64_t ordinal = 0;

  friend bool operator==(const PermutationId&, const PermutationId&) = default;
};

inline std::uint64_t factorial_u64(std::size_t n) {
  if (n > static_cast<std::size_t>(kMaxRankableOrder)) detail::fail(ErrorKind::Overflow, "N! exceeds 64 bits");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

inline bool is_permutation_word(std::span<const std::size_t> word) {
  std::vector<bool> seen(word.size() + 1, false);
  for (auto w : word) {
    if (w < 1 || w > word.size() || seen[w]) return false;
    seen[w] = true;
  }
  return true;
}

/// 1-based lexicographic rank of a permutation word (Lehmer code).
inline std::uint64_t rank_of(std::span<const std::size_t> word) {
  detail::require(is_permutation_word(word), ErrorKind::InvalidArgument, "not a permutation word");
  const std::size_t n = word.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (word[j] < word[i]) ++smaller;
    }
    rank += smaller * factorial_u64(n - 1 - i);
  }
  return rank + 1;
}

inline PermutationId make_permutation(std::vector<std::size_t> word) {
  detail::require(is_permutation_word(word), ErrorKind::InvalidArgument, "not a permutation word");
  PermutationId id;
  id.n = word.size();
  id.ordinal = id.n <= static_cast<std::size_t>(kMaxRankableOrder) ? rank_of(word) : 0;
  id.word = std::move(word);
  return id;
}

/// Inverse of rank_of.
inline PermutationId ordering_from_rank(std::size_t n, std::uint64_t ordinal) {
  detail::require(n >= 1, ErrorKind::InvalidArgument, "ordering size must be >= 1");
  const std::uint64_t total = factorial_u64(n);
  if (ordinal < 1 || ordinal > total) detail::fail(ErrorKind::IndexOutOfRange, "ordering rank outside 1..N!");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i + 1;
  std::uint64_t rest = ordinal - 1;
  std::vector<std::size_t> word;
  word.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t f = factorial_u64(n - 1 - i);
    const auto idx = static_cast<std::size_t>(rest / f);
    rest %= f;
    word.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  PermutationId id;
  id.n = n;
  id.word = std::move(word);
  id.ordinal = ordinal;
  return id;
}

/// Lazy lexicographic sequence of all N! orderings, or the first `limit`.
class OrderingSequence {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = PermutationId;
    using difference_type = std::ptrdiff_t;
    using pointer = const PermutationId*;
    using reference = const PermutationId&;

    iterator() = default;
    iterator(std::size_t n, std::uint64_t remaining) : remaining_(remaining) {
      current_.n = n;
      current_.word.resize(n);
      for (std::size_t i = 0; i < n; ++i) current_.word[i] = i + 1;
      current_.ordinal = 1;
    }

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }

    iterator& operator++() {
      if (remaining_ > 0) --remaining_;
      if (remaining_ > 0 && std::next_permutation(current_.word.begin(), current_.word.end())) {
        ++current_.ordinal;
      } else {
        remaining_ = 0;
      }
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& a, const iterator& b) { return a.remaining_ == b.remaining_; }

   private:
    PermutationId current_;
    std::uint64_t remaining_ = 0;
  };

  OrderingSequence(std::size_t n, std::optional<std::uint64_t> limit) : n_(n) {
    detail::require(n >= 1, ErrorKind::InvalidArgument, "ordering size must be >= 1");
    const std::uint64_t total = n <= static_cast<std::size_t>(kMaxRankableOrder)
                                    ? factorial_u64(n)
                                    : std::numeric_limits<std::uint64_t>::max();
    count_ = limit ? std::min(*limit, total) : total;
  }

  iterator begin() const { return count_ == 0 ? iterator{} : iterator(n_, count_); }
  iterator end() const { return iterator{}; }
  std::uint64_t size() const noexcept { return count_; }

 private:
  std::size_t n_;
  std::uint64_t count_;
};

inline OrderingSequence enumerate_orderings(std::size_t n, std::optional<std::uint64_t> limit = std::nullopt) {
  detail::require(n >= 2, ErrorKind::InvalidArgument, "enumerate_orderings requires N >= 2");
  return OrderingSequence(n, limit);
}

/// p(z) = z^N + sum_m c_{word(m)} z^(N-m) with c ascending Hermite zeros.
template <std::floating_point T>
MonicPolynomial<T> permuted_polynomial(const HermiteZeros<T>& h, const PermutationId& perm) {
  if (perm.n != static_cast<std::size_t>(h.order) || perm.word.size() != perm.n) {
    detail::fail(ErrorKind::DimensionMismatch, "permutation size differs from Hermite order");
  }
  ComplexVector<T> c(perm.n);
  for (std::size_t m = 0; m < perm.n; ++m) c[m] = h.zeros.at(perm.word[m] - 1);
  return MonicPolynomial<T>(std::move(c));
}

/// The permuted real coefficients themselves, c_{word(1)}..c_{word(N)}.
template <std::floating_point T>
std::vector<T> permuted_coefficients(const HermiteZeros<T>& h, const PermutationId& perm) {
  if (perm.n != static_cast<std::size_t>(h.order)) {
    detail::fail(ErrorKind::DimensionMismatch, "permutation size differs from Hermite order");
  }
  std::vector<T> c(perm.n);
  for (std::size_t m = 0; m < perm.n; ++m) c[m] = h.zeros.at(perm.word[m] - 1);
  return c;
}

/// The six N = 3 assignments in the order the published example lists them
/// (label mu = 1..6), expressed as words over the ascending zeros
/// (-sqrt(3/2), 0, sqrt(3/2)).
inline const std::array<std::array<std::size_t, 3>, 6>& published_n3_words() {
  static const std::array<std::array<std::size_t, 3>, 6> table{{
      {2, 3, 1},  // ( 0,  s, -s)
      {2, 1, 3},  // ( 0, -s,  s)
      {3, 2, 1},  // ( s,  0, -s)
      {3, 1, 2},  // ( s, -s,  0)
      {1, 3, 2},  // (-s,  s,  0)
      {1, 2, 3},  // (-s,  0,  s)
  }};
  return table;
}

}  // namespace dioph
