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

// Isochronous flows on the coefficients (gamma) and the zeros (zeta) of a
// time-dependent monic polynomial, an embedded Dormand-Prince 5(4)
// integrator, finite-difference Jacobians of the zero flows, and the closed-form
// linear evolution around equilibria.
//
//   gamma1:  d/dt gamma_m   = i [gamma_m - sum_{l != m} (gamma_m - gamma_l)^-1]
//   gamma2:  d2/dt2 gamma_m = -gamma_m + 2 sum_{l != m} (gamma_m - gamma_l)^-3
//   zeta1 / zeta2: the induced motion of the zeros, gamma = Vieta(zeta).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dioph/dense_matrix.hpp"
#include "dioph/eigensolver.hpp"
#include "dioph/error.hpp"
#include "dioph/hermite.hpp"
#include "dioph/matrices.hpp"
#include "dioph/polynomial.hpp"

namespace dioph {

enum class Flow { Gamma1, Zeta1, Gamma2, Zeta2 };

constexpr std::string_view to_string(Flow f) noexcept {
  switch (f) {
    case Flow::Gamma1: return "gamma1";
    case Flow::Zeta1: return "zeta1";
    case Flow::Gamma2: return "gamma2";
    case Flow::Zeta2: return "zeta2";
  }
  return "unknown";
}

inline Flow parse_flow(std::string_view s) {
  if (s == "gamma1") return Flow::Gamma1;
  if (s == "zeta1") return Flow::Zeta1;
  if (s == "gamma2") return Flow::Gamma2;
  if (s == "zeta2") return Flow::Zeta2;
  detail::fail(ErrorKind::InvalidArgument, "unknown flow '" + std::string(s) + "'");
}

constexpr bool is_second_order(Flow f) noexcept { return f == Flow::Gamma2 || f == Flow::Zeta2; }

/// Pairwise gap below which the vector fields refuse to evaluate.
inline constexpr double kCollisionFloor = 1e-10;

template <std::floating_point T = double>
struct FirstOrderState {
  T t = 0;
  ComplexVector<T> zeta;
  ComplexVector<T> gamma() const {
    const auto p = poly_from_zeros<T>(std::span<const std::complex<T>>(zeta));
    return ComplexVector<T>(p.coefficients().begin(), p.coefficients().end());
  }
};

template <std::floating_point T = double>
struct SecondOrderState {
  T t = 0;
  ComplexVector<T> zeta;
  ComplexVector<T> zeta_dot;
};

namespace detail {

template <std::floating_point T>
void require_apart(std::span<const std::complex<T>> x, T floor, const char* what) {
  if (x.size() > 1 && min_separation<T>(x) < floor) {
    fail(ErrorKind::NearCollision, std::string(what) + " closer than the collision floor");
  }
}

// F_m = gamma_m - sum_{l != m} (gamma_m - gamma_l)^-1
template <std::floating_point T>
ComplexVector<T> first_order_force(std::span<const std::complex<T>> g) {
  ComplexVector<T> out(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    std::complex<T> sum{0};
    for (std::size_t l = 0; l < g.size(); ++l) {
      if (l != m) sum += T(1) / (g[m] - g[l]);
    }
    out[m] = g[m] - sum;
  }
  return out;
}

// F_m = -gamma_m + 2 sum_{l != m} (gamma_m - gamma_l)^-3
template <std::floating_point T>
ComplexVector<T> second_order_force(std::span<const std::complex<T>> g) {
  ComplexVector<T> out(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    std::complex<T> sum{0};
    for (std::size_t l = 0; l < g.size(); ++l) {
      if (l == m) continue;
      const std::complex<T> d = g[m] - g[l];
      sum += T(1) / (d * d * d);
    }
    out[m] = -g[m] + T(2) * sum;
  }
  return out;
}

// Zero velocities induced by coefficient rates: -[prod (z_n - z_l)]^-1 sum_m rate_m z_n^(N-m).
template <std::floating_point T>
ComplexVector<T> zeros_from_coefficient_rates(std::span<const std::complex<T>> z,
                                              std::span<const std::complex<T>> rate) {
  const std::size_t n = z.size();
  ComplexVector<T> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<T> denom{1};
    for (std::size_t l = 0; l < n; ++l) {
      if (l != k) denom *= z[k] - z[l];
    }
    std::complex<T> acc{0};
    for (std::size_t m = 0; m < n; ++m) acc = acc * z[k] + rate[m];
    out[k] = -acc / denom;
  }
  return out;
}

}  // namespace detail

template <std::floating_point T>
ComplexVector<T> rhs_gamma_first(std::span<const std::complex<T>> gamma, T floor = T(kCollisionFloor)) {
  detail::require_apart(gamma, floor, "gamma");
  auto out = detail::first_order_force(gamma);
  for (auto& x : out) x *= std::complex<T>(0, 1);
  return out;
}

template <std::floating_point T>
ComplexVector<T> rhs_zeta_first(std::span<const std::complex<T>> zeta, T floor = T(kCollisionFloor)) {
  detail::require(zeta.size() >= 2, ErrorKind::InvalidArgument, "zero flows need N >= 2");
  detail::require_apart(zeta, floor, "zeta");
  const auto p = poly_from_zeros<T>(zeta);
  detail::require_apart(p.coefficients(), floor, "derived gamma");
  auto rate = detail::first_order_force(p.coefficients());
  for (auto& x : rate) x *= std::complex<T>(0, 1);
  return detail::zeros_from_coefficient_rates<T>(zeta, rate);
}

template <std::floating_point T>
ComplexVector<T> rhs_gamma_second(std::span<const std::complex<T>> gamma, T floor = T(kCollisionFloor)) {
  detail::require_apart(gamma, floor, "gamma");
  return detail::second_order_force(gamma);
}

template <std::floating_point T>
ComplexVector<T> rhs_zeta_second(std::span<const std::complex<T>> zeta, std::span<const std::complex<T>> zeta_dot,
                                 T floor = T(kCollisionFloor)) {
  const std::size_t n = zeta.size();
  detail::require(n >= 2, ErrorKind::InvalidArgument, "zero flows need N >= 2");
  if (zeta_dot.size() != n) detail::fail(ErrorKind::DimensionMismatch, "zeta_dot size differs from zeta");
  detail::require_apart(zeta, floor, "zeta");
  const auto p = poly_from_zeros<T>(zeta);
  detail::require_apart(p.coefficients(), floor, "derived gamma");
  const auto accel = detail::second_order_force(p.coefficients());
  auto out = detail::zeros_from_coefficient_rates<T>(zeta, accel);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<T> coupling{0};
    for (std::size_t l = 0; l < n; ++l) {
      if (l != k) coupling += T(2) * zeta_dot[k] * zeta_dot[l] / (zeta[k] - zeta[l]);
    }
    out[k] += coupling;
  }
  return out;
}

template <std::floating_point T>
ComplexVector<T> rhs_zeta_second(const SecondOrderState<T>& s, T floor = T(kCollisionFloor)) {
  return rhs_zeta_second<T>(s.zeta, s.zeta_dot, floor);
}

/// Acceleration of the zeta2 flow at zero velocity.
template <std::floating_point T>
ComplexVector<T> zeta_second_force(std::span<const std::complex<T>> zeta, T floor = T(kCollisionFloor)) {
  const ComplexVector<T> still(zeta.size(), std::complex<T>{0});
  return rhs_zeta_second<T>(zeta, still, floor);
}

/// Time derivative of the packed state: [x] for first-order flows, [x, x_dot]
/// for second-order ones.
template <std::floating_point T>
ComplexVector<T> flow_derivative(Flow flow, std::span<const std::complex<T>> state, T floor = T(kCollisionFloor)) {
  switch (flow) {
    case Flow::Gamma1: return rhs_gamma_first<T>(state, floor);
    case Flow::Zeta1: return rhs_zeta_first<T>(state, floor);
    case Flow::Gamma2:
    case Flow::Zeta2: {
      if (state.size() % 2 != 0) detail::fail(ErrorKind::DimensionMismatch, "second-order state must be [x, x_dot]");
      const std::size_t n = state.size() / 2;
      const auto x = state.first(n);
      const auto v = state.subspan(n);
      const auto a = flow == Flow::Gamma2 ? rhs_gamma_second<T>(x, floor) : rhs_zeta_second<T>(x, v, floor);
      ComplexVector<T> out(state.size());
      std::copy(v.begin(), v.end(), out.begin());
      std::copy(a.begin(), a.end(), out.begin() + static_cast<std::ptrdiff_t>(n));
      return out;
    }
  }
  detail::fail(ErrorKind::InvalidArgument, "unknown flow");
}

// ---------------------------------------------------------------------------
// Integration

template <std::floating_point T = double>
struct IntegrateOptions {
  T rel_tol = T(1e-10);
  T abs_tol = T(1e-12);
  /// Uniform sample intervals on [0, t_end]; ignored when sample_times is set.
  std::size_t samples = 1;
  /// Explicit ascending sample times in (0, t_end]; t_end is appended if missing.
  std::vector<T> sample_times;
  T min_step = T(1e-12);
  T collision_floor = T(kCollisionFloor);
  std::size_t max_steps = 50'000'000;
};

template <std::floating_point T = double>
struct TrajectorySample {
  T t = 0;
  ComplexVector<T> state;
};

template <std::floating_point T = double>
struct TrajectoryRecord {
  Flow flow = Flow::Gamma1;
  std::size_t n = 0;
  std::vector<TrajectorySample<T>> samples;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  T min_separation_seen = std::numeric_limits<T>::infinity();
};

namespace detail {

// Dormand-Prince 5(4) tableau.
template <std::floating_point T>
struct DormandPrince {
  static constexpr T c2 = T(1) / 5, c3 = T(3) / 10, c4 = T(4) / 5, c5 = T(8) / 9;
  static constexpr T a21 = T(1) / 5;
  static constexpr T a31 = T(3) / 40, a32 = T(9) / 40;
  static constexpr T a41 = T(44) / 45, a42 = T(-56) / 15, a43 = T(32) / 9;
  static constexpr T a51 = T(19372) / 6561, a52 = T(-25360) / 2187, a53 = T(64448) / 6561, a54 = T(-212) / 729;
  static constexpr T a61 = T(9017) / 3168, a62 = T(-355) / 33, a63 = T(46732) / 5247, a64 = T(49) / 176,
                     a65 = T(-5103) / 18656;
  static constexpr T b1 = T(35) / 384, b3 = T(500) / 1113, b4 = T(125) / 192, b5 = T(-2187) / 6784, b6 = T(11) / 84;
  static constexpr T e1 = T(71) / 57600, e3 = T(-71) / 16695, e4 = T(71) / 1920, e5 = T(-17253) / 339200,
                     e6 = T(22) / 525, e7 = T(-1) / 40;
};

template <std::floating_point T>
T weighted_rms(std::span<const std::complex<T>> err, std::span<const std::complex<T>> y0,
               std::span<const std::complex<T>> y1, T rel, T abs) {
  T sum = 0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const T scale = abs + rel * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const T r = std::abs(err[i]) / scale;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<T>(err.size()));
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of y' = f(y) from t = 0, returning
/// the state at t = 0 and at every requested sample time (hit exactly).
/// A NearCollision thrown by f rejects the trial step and halves it.
template <std::floating_point T, class Field, class OnStep>
std::vector<TrajectorySample<T>> integrate_field(Field&& f, ComplexVector<T> y, std::span<const T> stop_times,
                                                 const IntegrateOptions<T>& opt, std::size_t& accepted,
                                                 std::size_t& rejected, OnStep&& on_step) {
  using DP = detail::DormandPrince<T>;
  const std::size_t dim = y.size();
  std::vector<TrajectorySample<T>> out;
  out.push_back({T(0), y});
  on_step(std::span<const std::complex<T>>(y));
  if (stop_times.empty()) return out;

  auto axpy = [dim](ComplexVector<T>& dst, const ComplexVector<T>& base, std::initializer_list<std::pair<T, const ComplexVector<T>*>> terms, T h) {
    for (std::size_t i = 0; i < dim; ++i) {
      std::complex<T> acc{0};
      for (const auto& [c, k] : terms) acc += c * (*k)[i];
      dst[i] = base[i] + h * acc;
    }
  };

  ComplexVector<T> k1;
  try {
    k1 = f(std::span<const std::complex<T>>(y));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NearCollision) throw;
    detail::fail(ErrorKind::CollisionAbort, "initial state is inside the collision floor");
  }
  ComplexVector<T> k2, k3, k4, k5, k6, k7, tmp(dim), y_new(dim), err(dim);

  T t = 0;
  const T t_end = stop_times.back();
  T h;
  {
    T d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      const T sc = opt.abs_tol + opt.rel_tol * std::abs(y[i]);
      d0 += std::norm(y[i]) / (sc * sc);
      d1 += std::norm(k1[i]) / (sc * sc);
    }
    d0 = std::sqrt(d0 / static_cast<T>(dim));
    d1 = std::sqrt(d1 / static_cast<T>(dim));
    h = (d0 < T(1e-5) || d1 < T(1e-5)) ? T(1e-6) : T(0.01) * d0 / d1;
    h = std::min(h, t_end / 10);
    h = std::max(h, opt.min_step);
  }

  std::size_t next_stop = 0;
  std::size_t steps = 0;
  while (next_stop < stop_times.size()) {
    if (++steps > opt.max_steps) detail::fail(ErrorKind::StepFloorReached, "step budget exhausted");
    const T target = stop_times[next_stop];
    bool clamped = false;
    T step = h;
    if (t + step >= target) {
      step = target - t;
      clamped = true;
    }

    bool collided = false;
    try {
      axpy(tmp, y, {{DP::a21, &k1}}, step);
      k2 = f(std::span<const std::complex<T>>(tmp));
      axpy(tmp, y, {{DP::a31, &k1}, {DP::a32, &k2}}, step);
      k3 = f(std::span<const std::complex<T>>(tmp));
      axpy(tmp, y, {{DP::a41, &k1}, {DP::a42, &k2}, {DP::a43, &k3}}, step);
      k4 = f(std::span<const std::complex<T>>(tmp));
      axpy(tmp, y, {{DP::a51, &k1}, {DP::a52, &k2}, {DP::a53, &k3}, {DP::a54, &k4}}, step);
      k5 = f(std::span<const std::complex<T>>(tmp));
      axpy(tmp, y, {{DP::a61, &k1}, {DP::a62, &k2}, {DP::a63, &k3}, {DP::a64, &k4}, {DP::a65, &k5}}, step);
      k6 = f(std::span<const std::complex<T>>(tmp));
      axpy(y_new, y, {{DP::b1, &k1}, {DP::b3, &k3}, {DP::b4, &k4}, {DP::b5, &k5}, {DP::b6, &k6}}, step);
      k7 = f(std::span<const std::complex<T>>(y_new));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NearCollision) throw;
      collided = true;
    }

    if (collided) {
      ++rejected;
      h = step / 2;
      if (h < opt.min_step) detail::fail(ErrorKind::CollisionAbort, "trajectory approached a collision");
      continue;
    }

    for (std::size_t i = 0; i < dim; ++i) {
      err[i] = step * (DP::e1 * k1[i] + DP::e3 * k3[i] + DP::e4 * k4[i] + DP::e5 * k5[i] + DP::e6 * k6[i] +
                       DP::e7 * k7[i]);
    }
    const T norm = detail::weighted_rms<T>(err, y, y_new, opt.rel_tol, opt.abs_tol);
    const T factor = norm == 0 ? T(5) : std::clamp(T(0.9) * std::pow(norm, T(-0.2)), T(0.2), T(5));

    if (norm <= 1) {
      ++accepted;
      t = clamped ? target : t + step;
      y.swap(y_new);
      k1.swap(k7);
      on_step(std::span<const std::complex<T>>(y));
      if (clamped) {
        out.push_back({target, y});
        ++next_stop;
        // keep the controller's proposal rather than the clamped remainder
        h = std::max(h, step * factor);
      } else {
        h = step * factor;
      }
    } else {
      ++rejected;
      h = step * std::min(factor, T(1));
      if (h < opt.min_step) detail::fail(ErrorKind::StepFloorReached, "step size fell below the floor");
    }
  }
  return out;
}

template <std::floating_point T>
std::vector<T> sample_schedule(T t_end, const IntegrateOptions<T>& opt) {
  std::vector<T> times;
  if (!opt.sample_times.empty()) {
    T last = 0;
    for (T s : opt.sample_times) {
      if (!(s > last) || s > t_end) detail::fail(ErrorKind::InvalidArgument, "sample times must ascend within (0, t_end]");
      times.push_back(s);
      last = s;
    }
    if (times.back() < t_end) times.push_back(t_end);
    return times;
  }
  const std::size_t k = std::max<std::size_t>(opt.samples, 1);
  for (std::size_t i = 1; i <= k; ++i) times.push_back(i == k ? t_end : t_end * static_cast<T>(i) / static_cast<T>(k));
  return times;
}

/// Integrate one of the four flows. `initial` is [x] for first-order flows and
/// [x, x_dot] for second-order ones.
template <std::floating_point T>
TrajectoryRecord<T> integrate(Flow flow, ComplexVector<T> initial, T t_end, const IntegrateOptions<T>& opt = {}) {
  detail::require(t_end > 0, ErrorKind::InvalidArgument, "t_end must be positive");
  detail::require(opt.rel_tol > 0 && opt.abs_tol > 0, ErrorKind::InvalidArgument, "tolerances must be positive");
  detail::require_finite<T>(initial, "initial state");
  const std::size_t n = is_second_order(flow) ? initial.size() / 2 : initial.size();
  detail::require(n >= 2 && (!is_second_order(flow) || initial.size() == 2 * n), ErrorKind::DimensionMismatch,
                  "initial state has the wrong shape for this flow");

  TrajectoryRecord<T> rec;
  rec.flow = flow;
  rec.n = n;
  const auto times = sample_schedule(t_end, opt);
  const T floor = opt.collision_floor;
  auto field = [flow, floor](std::span<const std::complex<T>> y) { return flow_derivative<T>(flow, y, floor); };
  auto track = [&rec, n](std::span<const std::complex<T>> y) {
    rec.min_separation_seen = std::min(rec.min_separation_seen, min_separation<T>(y.first(n)));
  };
  rec.samples = integrate_field<T>(field, std::move(initial), std::span<const T>(times), opt, rec.accepted,
                                   rec.rejected, track);
  return rec;
}

/// max_i |y_i(t_last) - y_i(0)|
template <std::floating_point T>
T return_distance(const TrajectoryRecord<T>& rec) {
  if (rec.samples.size() < 2) return 0;
  const auto& a = rec.samples.front().state;
  const auto& b = rec.samples.back().state;
  T d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(b[i] - a[i]));
  return d;
}

/// Smallest k in 1..max_multiple with the state back within tol at t = 2 pi k, if any.
/// Zeros may trade places along a loop and only return after several periods.
template <std::floating_point T>
std::optional<int> detect_period_multiple(Flow flow, const ComplexVector<T>& initial, int max_multiple, T tol,
                                          IntegrateOptions<T> opt = {}) {
  detail::require(max_multiple >= 1, ErrorKind::InvalidArgument, "max_multiple must be >= 1");
  const T period = 2 * std::numbers::pi_v<T>;
  opt.sample_times.clear();
  for (int k = 1; k <= max_multiple; ++k) opt.sample_times.push_back(period * static_cast<T>(k));
  const auto rec = integrate<T>(flow, initial, period * static_cast<T>(max_multiple), opt);
  for (std::size_t s = 1; s < rec.samples.size(); ++s) {
    T d = 0;
    for (std::size_t i = 0; i < initial.size(); ++i) d = std::max(d, std::abs(rec.samples[s].state[i] - initial[i]));
    if (d <= tol) return static_cast<int>(s);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Equilibria and seeded perturbations

/// Equilibrium of a flow for one Hermite ordering: the permuted coefficients for
/// gamma flows, the zeros of the permuted polynomial for zeta flows; zero
/// velocities appended for second-order flows.
template <std::floating_point T>
ComplexVector<T> equilibrium_state(Flow flow, const HermiteZeros<T>& h, const PermutationId& perm,
                                   const RootOptions<T>& root_opt = {}) {
  ComplexVector<T> x;
  if (flow == Flow::Gamma1 || flow == Flow::Gamma2) {
    const auto c = permuted_coefficients(h, perm);
    x.assign(c.begin(), c.end());
  } else {
    const auto z = roots(permuted_polynomial(h, perm), root_opt);
    x.assign(z.begin(), z.end());
  }
  if (is_second_order(flow)) x.resize(2 * x.size(), std::complex<T>{0});
  return x;
}

/// Uniformly random direction in C^dim scaled to Euclidean norm `radius`.
template <std::floating_point T>
ComplexVector<T> random_direction(std::size_t dim, T radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<T> normal(0, 1);
  ComplexVector<T> v(dim);
  T norm = 0;
  for (auto& x : v) {
    x = {normal(rng), normal(rng)};
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x *= radius / norm;
  return v;
}

template <std::floating_point T>
ComplexVector<T> perturbed(const ComplexVector<T>& base, T radius, std::uint64_t seed) {
  auto out = base;
  const auto d = random_direction<T>(base.size(), radius, seed);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += d[i];
  return out;
}

// ---------------------------------------------------------------------------
// Finite-difference Jacobian oracle

enum class JacobianField { Zeta1, Zeta2Force };

/// Central differences J(i, j) = (f_i(z + h e_j) - f_i(z - h e_j)) / 2h. The
/// fields here are holomorphic, so real-direction steps give the complex derivative.
template <std::floating_point T, class Field>
DenseMatrix<T> fd_jacobian(Field&& f, std::span<const std::complex<T>> z, T h) {
  if (!(h >= T(1e-8) && h <= T(1e-4))) detail::fail(ErrorKind::InvalidArgument, "FD step must lie in [1e-8, 1e-4]");
  const std::size_t n = z.size();
  DenseMatrix<T> jac(n);
  ComplexVector<T> zp(z.begin(), z.end());
  ComplexVector<T> zm(z.begin(), z.end());
  for (std::size_t j = 0; j < n; ++j) {
    zp[j] = z[j] + h;
    zm[j] = z[j] - h;
    const ComplexVector<T> fp = f(std::span<const std::complex<T>>(zp));
    const ComplexVector<T> fm = f(std::span<const std::complex<T>>(zm));
    for (std::size_t i = 0; i < n; ++i) jac(i, j) = (fp[i] - fm[i]) / (2 * h);
    zp[j] = z[j];
    zm[j] = z[j];
  }
  return jac;
}

template <std::floating_point T>
DenseMatrix<T> fd_jacobian(JacobianField field, const ZeroVector<T>& z, T h) {
  if (field == JacobianField::Zeta1) {
    return fd_jacobian<T>([](std::span<const std::complex<T>> x) { return rhs_zeta_first<T>(x); }, z.values(), h);
  }
  return fd_jacobian<T>([](std::span<const std::complex<T>> x) { return zeta_second_force<T>(x); }, z.values(), h);
}

/// The matrix implied by a field Jacobian: -i J for zeta1 (x' = i M x), -J for
/// the zeta2 force (x'' = -M x).
template <std::floating_point T>
DenseMatrix<T> matrix_from_jacobian(MatrixKind kind, const DenseMatrix<T>& jac) {
  return kind == MatrixKind::M1 ? std::complex<T>(0, -1) * jac : std::complex<T>(-1, 0) * jac;
}

/// max |closed form - matrix_from_jacobian(FD)| / max |closed form|
template <std::floating_point T>
T jacobian_oracle_deviation(MatrixKind kind, const ZeroVector<T>& z, std::span<const T> c, T h) {
  const auto closed = build_matrix<T>(kind, z, c);
  const auto jac = fd_jacobian<T>(kind == MatrixKind::M1 ? JacobianField::Zeta1 : JacobianField::Zeta2Force, z, h);
  return max_abs_difference(closed.entries, matrix_from_jacobian(kind, jac)) / closed.entries.max_abs();
}

// ---------------------------------------------------------------------------
// Linear evolution around an equilibrium

/// Eigen-decomposition of a closed-form matrix, reused across evaluation times.
template <std::floating_point T = double>
class LinearModes {
 public:
  explicit LinearModes(const DiophantineMatrix<T>& m, const EigenOptions<T>& opt = {})
      : kind_(m.kind), n_(m.n) {
    auto values = sorted_by_real_part(dioph::eigenvalues(m.entries, opt).eigenvalues);
    auto vec = dioph::eigenvectors(m.entries, values);
    values_ = std::move(vec.eigenvalues);
    vectors_ = std::move(*vec.eigenvectors);
    basis_ = lu_decompose(vectors_);
    if (basis_.singular) detail::fail(ErrorKind::DegenerateSpectrum, "eigenvectors are linearly dependent");
  }

  MatrixKind kind() const noexcept { return kind_; }
  const ComplexVector<T>& eigenvalues() const noexcept { return values_; }
  const DenseMatrix<T>& eigenvectors() const noexcept { return vectors_; }

  /// Coefficients a with v = sum_m a_m u_m.
  ComplexVector<T> expand(std::span<const std::complex<T>> v) const { return lu_solve(basis_, v); }

  /// v(t) = sum_m a_m exp(i lambda_m t) u_m
  ComplexVector<T> first_order(std::span<const std::complex<T>> v0, T t) const {
    const auto a = expand(v0);
    ComplexVector<T> weights(n_);
    for (std::size_t m = 0; m < n_; ++m) weights[m] = a[m] * std::exp(std::complex<T>(0, 1) * values_[m] * t);
    return vectors_.apply(weights);
  }

  /// v(t) = sum_m [a_m cos(w_m t) + b_m sin(w_m t) / w_m] u_m with angular
  /// frequency w_m = sqrt(eigenvalue_m) (principal root).
  ComplexVector<T> second_order(std::span<const std::complex<T>> v0, std::span<const std::complex<T>> vdot0,
                                T t) const {
    const auto a = expand(v0);
    const auto b = expand(vdot0);
    ComplexVector<T> weights(n_);
    for (std::size_t m = 0; m < n_; ++m) {
      if (!(values_[m].real() > 0)) {
        detail::fail(ErrorKind::InvalidArgument, "second-order evolution needs eigenvalues with positive real part");
      }
      const std::complex<T> w = std::sqrt(values_[m]);
      weights[m] = a[m] * std::cos(w * t) + b[m] * std::sin(w * t) / w;
    }
    return vectors_.apply(weights);
  }

 private:
  MatrixKind kind_;
  std::size_t n_;
  ComplexVector<T> values_;
  DenseMatrix<T> vectors_;
  LuFactors<T> basis_;
};

template <std::floating_point T>
ComplexVector<T> linear_evolution_first(const DiophantineMatrix<T>& m, std::span<const std::complex<T>> v0, T t) {
  detail::require(m.kind == MatrixKind::M1, ErrorKind::InvalidArgument, "first-order evolution uses an M1 matrix");
  return LinearModes<T>(m).first_order(v0, t);
}

template <std::floating_point T>
ComplexVector<T> linear_evolution_second(const DiophantineMatrix<T>& m, std::span<const std::complex<T>> v0,
                                         std::span<const std::complex<T>> vdot0, T t) {
  detail::require(m.kind == MatrixKind::M2, ErrorKind::InvalidArgument, "second-order evolution uses an M2 matrix");
  return LinearModes<T>(m).second_order(v0, vdot0, t);
}

}  // namespace dioph
