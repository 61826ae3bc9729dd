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

// Reference computations for the tests. Everything here is deliberately naive
// and shares no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using cmat = std::vector<cvec>;

/// sigma_j by summing the products over all j-subsets (bitmask enumeration).
inline cplx sigma_brute(int j, const cvec& z, std::ptrdiff_t skip = -1) {
  if (j == 0) return 1;
  const std::size_t n = z.size();
  cplx total = 0;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (skip >= 0 && (mask >> skip) & 1UL) continue;
    if (__builtin_popcountl(mask) != j) continue;
    cplx p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1UL) p *= z[i];
    }
    total += p;
  }
  return total;
}

/// c_m = (-1)^m sigma_m(z), m = 1..N
inline cvec coefficients_brute(const cvec& z) {
  cvec c;
  for (std::size_t m = 1; m <= z.size(); ++m) c.push_back((m % 2 ? -1.0 : 1.0) * sigma_brute(static_cast<int>(m), z));
  return c;
}

/// d^2/dt^2 of c_m(zeta(t)) at t = 0 for a path with zeta(0) = z, zeta'(0) = v,
/// zeta''(0) = a, differentiating each subset product by the product rule.
inline cvec coefficient_acceleration(const cvec& z, const cvec& v, const cvec& a) {
  const std::size_t n = z.size();
  cvec out(n, 0.0);
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1UL) s.push_back(i);
    }
    cplx total = 0;
    for (std::size_t i : s) {
      cplx rest = a[i];
      for (std::size_t k : s) {
        if (k != i) rest *= z[k];
      }
      total += rest;
      for (std::size_t j : s) {
        if (j == i) continue;
        cplx pair = v[i] * v[j];
        for (std::size_t k : s) {
          if (k != i && k != j) pair *= z[k];
        }
        total += pair;
      }
    }
    out[s.size() - 1] += (s.size() % 2 ? -1.0 : 1.0) * total;
  }
  return out;
}

/// prod_i (x - z_i)
inline cplx product_form(const cvec& z, cplx x) {
  cplx p = 1;
  for (const auto& zi : z) p *= x - zi;
  return p;
}

/// x^N + c_1 x^(N-1) + ... + c_N, summed term by term with std::pow.
inline cplx power_sum(const cvec& c, cplx x) {
  const int n = static_cast<int>(c.size());
  cplx s = std::pow(x, n);
  for (int m = 1; m <= n; ++m) s += c[m - 1] * std::pow(x, n - m);
  return s;
}

/// Zeros of x^2 + b x + c.
inline cvec quadratic_roots(cplx b, cplx c) {
  const cplx d = std::sqrt(b * b - 4.0 * c);
  return {(-b - d) / 2.0, (-b + d) / 2.0};
}

/// Leibniz expansion over all permutations.
inline cplx leibniz_det(const cmat& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  cplx det = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) inversions += p[i] > p[k];
    }
    cplx term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][p[i]];
    det += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

/// Physicists' Hermite H_n(x) by the three-term recurrence.
inline double hermite_value(int n, double x) {
  double h0 = 1, h1 = 2 * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2 * x * h1 - 2 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

/// The matrix formula term by term: w from subset sums, z_n^(N-j) by std::pow,
/// the product over l != n written out.
inline cmat matrix_direct(const cvec& z, const cvec& c, double k, int p) {
  const std::size_t n = z.size();
  auto w = [&](std::size_t j, std::size_t m) {  // 1-based j, 0-based m
    return (j % 2 ? -1.0 : 1.0) * sigma_brute(static_cast<int>(j) - 1, z, static_cast<std::ptrdiff_t>(m));
  };
  cmat out(n, cvec(n));
  for (std::size_t r = 0; r < n; ++r) {
    cplx prod = 1;
    for (std::size_t l = 0; l < n; ++l) {
      if (l != r) prod *= z[r] - z[l];
    }
    for (std::size_t m = 0; m < n; ++m) {
      cplx sum = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        cplx inner = w(j, m);
        for (std::size_t s = 1; s <= n; ++s) {
          if (s != j) inner += k * (w(j, m) - w(s, m)) / std::pow(c[j - 1] - c[s - 1], p);
        }
        sum += std::pow(z[r], static_cast<int>(n - j)) * inner;
      }
      out[r][m] = -sum / prod;
    }
  }
  return out;
}

// N = 2 closed forms in terms of (z1, z2).

inline cmat m1_n2(cplx z1, cplx z2) {
  const cplx d = z1 - z2;
  const cplx q = (1.0 - z1 * z2) / (2.0 * d);
  return {{1.5 - q, -(1.0 - z1 * z1) / (2.0 * d)}, {(1.0 - z2 * z2) / (2.0 * d), 1.5 + q}};
}

inline cmat m2_n2(cplx z1, cplx z2) {
  const cplx d = z1 - z2;
  const cplx q = 1.5 * (1.0 - z1 * z2) / d;
  return {{2.5 - q, -1.5 * (1.0 - z1 * z1) / d}, {1.5 * (1.0 - z2 * z2) / d, 2.5 + q}};
}

/// (z+, z-) for the two N = 2 orderings, mu = 1, 2.
inline cvec zeros_n2(int mu) {
  const double s = mu % 2 ? -1.0 : 1.0;
  const cplx root = std::sqrt(cplx(1.0 - s * 4.0 * std::sqrt(2.0)));
  const double den = 2.0 * std::sqrt(2.0);
  return {(s + root) / den, (s - root) / den};
}

/// Coefficients (c1, c2) of z^2 + (-1)^mu (1 - z) / sqrt(2).
inline cvec coefficients_n2(int mu) {
  const double s = mu % 2 ? -1.0 : 1.0;
  return {-s / std::sqrt(2.0), s / std::sqrt(2.0)};
}

/// The printed N = 3 zero table, four decimals, rows mu = 1..6.
inline const std::vector<cvec>& n3_table() {
  static const std::vector<cvec> rows{
      {{0.7090, 0}, {-0.3545, -1.2656}, {-0.3545, 1.2656}},
      {{0.7202, -0.5758}, {0.7202, 0.5758}, {-1.4405, 0}},
      {{-1.0031, 0.7492}, {-1.0031, -0.7492}, {0.7814, 0}},
      {{0, 0}, {-1.8772, 0}, {0.6524, 0}},
      {{0, 0}, {-1.8772, 0}, {0.6524, 0}},
      {{-0.7814, 0}, {1.0031, -0.7492}, {1.0031, 0.7492}},
  };
  return rows;
}

/// Ascending H_6 zeros frozen from numpy.polynomial.hermite.hermroots.
inline const std::vector<double>& hermite6_frozen() {
  static const std::vector<double> z{-2.350604973674492, -1.335849074013697, -0.4360774119276165,
                                     0.4360774119276165, 1.335849074013697,  2.350604973674492};
  return z;
}

/// Greedy nearest matching distance between two multisets of equal size.
inline double multiset_distance(cvec a, const cvec& b) {
  double worst = 0;
  for (const auto& x : b) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (std::abs(a[i] - x) < std::abs(a[best] - x)) best = i;
    }
    worst = std::max(worst, std::abs(a[best] - x));
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace oracle
