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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dioph/dynamics.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using dioph::ComplexVector;
using dioph::ErrorKind;
using dioph::Flow;
using dioph::MatrixKind;
using dioph::ZeroVector;
using testing_support::kind_of;
using testing_support::random_points;
using cplx = std::complex<double>;

constexpr double kTwoPi = 2 * std::numbers::pi;

double max_norm(const ComplexVector<double>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_gap(const ComplexVector<double>& a, const ComplexVector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ComplexVector<double> hermite_state(int n) {
  const auto h = dioph::hermite_zeros<double>(n);
  return {h.zeros.begin(), h.zeros.end()};
}

ZeroVector<double> equilibrium_zeros(int n, std::uint64_t rank) {
  const auto h = dioph::hermite_zeros<double>(n);
  return dioph::roots(dioph::permuted_polynomial(h, dioph::ordering_from_rank(static_cast<std::size_t>(n), rank)));
}

// Points spread on a circle with a seeded wobble, well away from collisions.
ComplexVector<double> spread(std::size_t n, std::uint64_t seed) {
  auto v = random_points(n, seed, 0.2);
  for (std::size_t k = 0; k < n; ++k) v[k] += std::polar(1.5, kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  return v;
}

TEST(Flow, Names) {
  for (auto f : {Flow::Gamma1, Flow::Zeta1, Flow::Gamma2, Flow::Zeta2}) EXPECT_EQ(dioph::parse_flow(dioph::to_string(f)), f);
  EXPECT_EQ(kind_of([] { dioph::parse_flow("omega"); }), ErrorKind::InvalidArgument);
  EXPECT_TRUE(dioph::is_second_order(Flow::Zeta2));
  EXPECT_FALSE(dioph::is_second_order(Flow::Gamma1));
}

TEST(RhsGammaFirst, EquilibriumAndExample) {
  for (int n = 2; n <= 12; ++n) EXPECT_LT(max_norm(dioph::rhs_gamma_first<double>(hermite_state(n))), 1e-10) << n;
  const auto r = dioph::rhs_gamma_first<double>(ComplexVector<double>{1, -1});
  EXPECT_LT(std::abs(r[0] - cplx(0, 0.5)), 1e-15);
  EXPECT_LT(std::abs(r[1] - cplx(0, -0.5)), 1e-15);
  EXPECT_EQ(kind_of([] { dioph::rhs_gamma_first<double>(ComplexVector<double>{1, 1}); }), ErrorKind::NearCollision);
}

TEST(RhsGammaFirst, MatchesShortStepFlow) {
  const auto g0 = spread(4, 3);
  dioph::IntegrateOptions<double> opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-15;
  const double h = 1e-3;
  opt.sample_times = {h, 2 * h};
  const auto rec = dioph::integrate<double>(Flow::Gamma1, g0, 2 * h, opt);
  ASSERT_EQ(rec.samples.size(), 3u);
  const auto f = dioph::rhs_gamma_first<double>(g0);
  for (std::size_t i = 0; i < 4; ++i) {
    const cplx d = (-3.0 * g0[i] + 4.0 * rec.samples[1].state[i] - rec.samples[2].state[i]) / (2 * h);
    EXPECT_LT(std::abs(d - f[i]), 1e-5 * (1 + std::abs(f[i])));
  }
}

TEST(RhsZetaFirst, EquilibriumZeros) {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t rank : {1ull, 2ull}) {
      const auto z = equilibrium_zeros(n, rank);
      EXPECT_LT(max_norm(dioph::rhs_zeta_first<double>(z.values())), 1e-8) << n;
    }
  }
}

TEST(RhsZetaFirst, ChainRuleThroughVieta) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto z = spread(3, seed);
    const auto zdot = dioph::rhs_zeta_first<double>(z);
    const auto cdot = dioph::vieta_jacobian_apply<double>(z, zdot);
    const auto c = oracle::coefficients_brute(z);
    const auto ref = dioph::rhs_gamma_first<double>(ComplexVector<double>(c.begin(), c.end()));
    EXPECT_LT(max_gap(cdot, ref), 1e-8 * (1 + max_norm(ref)));
  }
}

TEST(RhsGammaSecond, EquilibriumAndExample) {
  for (int n = 2; n <= 12; ++n) EXPECT_LT(max_norm(dioph::rhs_gamma_second<double>(hermite_state(n))), 1e-10) << n;
  const auto r = dioph::rhs_gamma_second<double>(ComplexVector<double>{0, 1});
  EXPECT_LT(std::abs(r[0] - cplx(-2)), 1e-15);
  EXPECT_LT(std::abs(r[1] - cplx(1)), 1e-15);
}

TEST(RhsGammaSecond, MatchesShortStepFlow) {
  const auto g0 = spread(3, 8);
  const auto v0 = random_points(3, 9, 0.3);
  ComplexVector<double> y0 = g0;
  y0.insert(y0.end(), v0.begin(), v0.end());
  dioph::IntegrateOptions<double> opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-15;
  const double h = 1e-3;
  opt.sample_times = {h, 2 * h};
  const auto rec = dioph::integrate<double>(Flow::Gamma2, y0, 2 * h, opt);
  const auto a = dioph::rhs_gamma_second<double>(g0);
  for (std::size_t i = 0; i < 3; ++i) {
    const cplx d = (-3.0 * v0[i] + 4.0 * rec.samples[1].state[3 + i] - rec.samples[2].state[3 + i]) / (2 * h);
    EXPECT_LT(std::abs(d - a[i]), 1e-5 * (1 + std::abs(a[i])));
  }
}

TEST(RhsZetaSecond, EquilibriumAtRest) {
  for (int n = 2; n <= 6; ++n) {
    const auto z = equilibrium_zeros(n, 2);
    dioph::SecondOrderState<double> s;
    s.zeta.assign(z.begin(), z.end());
    s.zeta_dot.assign(static_cast<std::size_t>(n), 0.0);
    EXPECT_LT(max_norm(dioph::rhs_zeta_second<double>(s)), 1e-8) << n;
  }
}

TEST(RhsZetaSecond, ChainRuleThroughVieta) {
  // Along any path through (z, v, a) the coefficients must accelerate as the gamma2 field says.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto z = spread(3, 20 + seed);
    const auto v = random_points(3, 40 + seed, 0.4);
    const auto a = dioph::rhs_zeta_second<double>(z, v);
    const auto c = oracle::coefficients_brute(z);
    const auto ref = dioph::rhs_gamma_second<double>(ComplexVector<double>(c.begin(), c.end()));
    const auto cdd = oracle::coefficient_acceleration(z, v, {a.begin(), a.end()});
    for (std::size_t m = 0; m < 3; ++m) {
      EXPECT_LT(std::abs(cdd[m] - ref[m]), 1e-8 * (1 + std::abs(ref[m]))) << "seed " << seed;
    }
  }
  EXPECT_EQ(kind_of([] { dioph::rhs_zeta_second<double>(ComplexVector<double>{1, 2}, ComplexVector<double>{0}); }),
            ErrorKind::DimensionMismatch);
}

TEST(Integrate, EquilibriumStaysPut) {
  const auto h = dioph::hermite_zeros<double>(4);
  const auto eq = dioph::equilibrium_state<double>(Flow::Gamma1, h, dioph::ordering_from_rank(4, 1));
  const auto rec = dioph::integrate<double>(Flow::Gamma1, eq, kTwoPi);
  EXPECT_LT(dioph::return_distance(rec), 1e-9);
}

TEST(Integrate, LargePerturbationOfGammaFirst) {
  const auto h = dioph::hermite_zeros<double>(3);
  const auto eq = dioph::equilibrium_state<double>(Flow::Gamma1, h, dioph::ordering_from_rank(3, 1));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rec = dioph::integrate<double>(Flow::Gamma1, dioph::perturbed(eq, 0.5, seed), kTwoPi);
    EXPECT_LT(dioph::return_distance(rec), 1e-6) << seed;
  }
}

TEST(Integrate, ZetaSecondWithSmallVelocities) {
  const auto h = dioph::hermite_zeros<double>(3);
  auto state = dioph::equilibrium_state<double>(Flow::Zeta2, h, dioph::ordering_from_rank(3, 4));
  const auto v = dioph::random_direction<double>(3, 1e-3, 5);
  for (std::size_t i = 0; i < 3; ++i) state[3 + i] = v[i];
  const auto rec = dioph::integrate<double>(Flow::Zeta2, state, kTwoPi);
  EXPECT_LT(dioph::return_distance(rec), 1e-5);
}

TEST(Integrate, SampleScheduleHitsEndExactly) {
  const auto h = dioph::hermite_zeros<double>(3);
  const auto eq = dioph::equilibrium_state<double>(Flow::Gamma2, h, dioph::ordering_from_rank(3, 3));
  dioph::IntegrateOptions<double> opt;
  opt.samples = 10;
  const auto rec = dioph::integrate<double>(Flow::Gamma2, dioph::perturbed(eq, 1e-2, 1), kTwoPi, opt);
  ASSERT_EQ(rec.samples.size(), 11u);
  EXPECT_EQ(rec.samples.front().t, 0.0);
  EXPECT_EQ(rec.samples.back().t, kTwoPi);
  for (std::size_t k = 1; k < rec.samples.size(); ++k) EXPECT_GT(rec.samples[k].t, rec.samples[k - 1].t);
  EXPECT_GT(rec.accepted, 0u);
  EXPECT_GT(rec.min_separation_seen, 0.0);
}

TEST(Integrate, ArgumentErrors) {
  const ComplexVector<double> g{1, -1};
  EXPECT_EQ(kind_of([&] { dioph::integrate<double>(Flow::Gamma1, g, 0.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { dioph::integrate<double>(Flow::Gamma2, ComplexVector<double>{1, -1, 0}, 1.0); }),
            ErrorKind::DimensionMismatch);
  dioph::IntegrateOptions<double> opt;
  opt.rel_tol = 0;
  EXPECT_EQ(kind_of([&] { dioph::integrate<double>(Flow::Gamma1, g, 1.0, opt); }), ErrorKind::InvalidArgument);
}

TEST(Integrate, StartInsideCollisionFloorAborts) {
  const ComplexVector<double> g{1, 1 + 1e-12, -1};
  EXPECT_EQ(kind_of([&] { dioph::integrate<double>(Flow::Gamma1, g, 1.0); }), ErrorKind::CollisionAbort);
}

TEST(Integrate, StepBudget) {
  const auto h = dioph::hermite_zeros<double>(3);
  const auto eq = dioph::equilibrium_state<double>(Flow::Gamma1, h, dioph::ordering_from_rank(3, 1));
  dioph::IntegrateOptions<double> opt;
  opt.max_steps = 3;
  EXPECT_EQ(kind_of([&] { dioph::integrate<double>(Flow::Gamma1, dioph::perturbed(eq, 0.1, 1), kTwoPi, opt); }),
            ErrorKind::StepFloorReached);
}

TEST(PeriodMultiple, NearEquilibriumReturnsAfterOnePeriod) {
  const auto h = dioph::hermite_zeros<double>(3);
  const auto eq = dioph::equilibrium_state<double>(Flow::Zeta1, h, dioph::ordering_from_rank(3, 2));
  const auto k = dioph::detect_period_multiple<double>(Flow::Zeta1, dioph::perturbed(eq, 1e-2, 4), 3, 1e-6);
  ASSERT_TRUE(k.has_value());
  EXPECT_EQ(*k, 1);
}

TEST(Perturbation, SeededAndScaled) {
  const auto a = dioph::random_direction<double>(6, 0.25, 42);
  const auto b = dioph::random_direction<double>(6, 0.25, 42);
  const auto c = dioph::random_direction<double>(6, 0.25, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  double norm = 0;
  for (const auto& x : a) norm += std::norm(x);
  EXPECT_NEAR(std::sqrt(norm), 0.25, 1e-15);
}

TEST(FdJacobian, NTwoClosedForm) {
  const auto zv = oracle::zeros_n2(1);
  const ZeroVector<double> z(ComplexVector<double>(zv.begin(), zv.end()));
  const auto jac = dioph::fd_jacobian<double>(dioph::JacobianField::Zeta1, z, 1e-5);
  const auto m = dioph::matrix_from_jacobian(MatrixKind::M1, jac);
  const auto ref = oracle::m1_n2(zv[0], zv[1]);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LT(std::abs(m(i, j) - ref[i][j]), 1e-5 * 2.5);
  }
}

TEST(FdJacobian, ClosedFormsAtNThree) {
  const auto h = dioph::hermite_zeros<double>(3);
  for (const auto& perm : dioph::enumerate_orderings(3)) {
    const auto z = dioph::roots(dioph::permuted_polynomial(h, perm));
    const auto c = dioph::permuted_coefficients(h, perm);
    EXPECT_LT(dioph::jacobian_oracle_deviation<double>(MatrixKind::M1, z, c, 1e-5), 1e-5);
    EXPECT_LT(dioph::jacobian_oracle_deviation<double>(MatrixKind::M2, z, c, 1e-5), 1e-4);
  }
}

TEST(FdJacobian, LinearFieldIsExact) {
  dioph::DenseMatrix<double> a(4, random_points(16, 3));
  const auto x = random_points(4, 4);
  const auto jac = dioph::fd_jacobian<double>([&a](std::span<const cplx> y) { return a.apply(y); },
                                              std::span<const cplx>(x), 1e-4);
  EXPECT_LT(dioph::max_abs_difference(jac, a), 1e-10);
  EXPECT_EQ(kind_of([&] { dioph::fd_jacobian<double>(dioph::JacobianField::Zeta1, ZeroVector<double>(x), 1e-2); }),
            ErrorKind::InvalidArgument);
}

class LinearEvolution : public ::testing::TestWithParam<int> {};

TEST_P(LinearEvolution, IdentityAtZeroAndPeriodic) {
  const int n = GetParam();
  const auto h = dioph::hermite_zeros<double>(n);
  const auto perm = dioph::ordering_from_rank(static_cast<std::size_t>(n), 2);
  const auto z = dioph::roots(dioph::permuted_polynomial(h, perm));
  const auto c = dioph::permuted_coefficients(h, perm);
  const auto m1 = dioph::build_m1<double>(z, std::span<const double>(c));
  const auto m2 = dioph::build_m2<double>(z, std::span<const double>(c));
  const auto v0 = random_points(static_cast<std::size_t>(n), 7);
  const auto vd = random_points(static_cast<std::size_t>(n), 8);
  EXPECT_LT(max_gap(dioph::linear_evolution_first<double>(m1, v0, 0.0), v0), 1e-10);
  EXPECT_LT(max_gap(dioph::linear_evolution_first<double>(m1, v0, kTwoPi), v0), 1e-8);
  EXPECT_LT(max_gap(dioph::linear_evolution_second<double>(m2, v0, vd, 0.0), v0), 1e-10);
  const ComplexVector<double> still(static_cast<std::size_t>(n), 0.0);
  EXPECT_LT(max_gap(dioph::linear_evolution_second<double>(m2, v0, still, kTwoPi), v0), 1e-8);
  EXPECT_LT(max_gap(dioph::linear_evolution_second<double>(m2, v0, vd, kTwoPi), v0), 1e-8);
  EXPECT_EQ(kind_of([&] { dioph::linear_evolution_first<double>(m2, v0, 1.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { dioph::linear_evolution_second<double>(m1, v0, vd, 1.0); }), ErrorKind::InvalidArgument);
}

TEST_P(LinearEvolution, MatchesLinearisedOde) {
  // The linear evolution solves x' = i M1 x exactly; compare with the integrator on that ODE.
  const int n = GetParam();
  const auto h = dioph::hermite_zeros<double>(n);
  const auto perm = dioph::ordering_from_rank(static_cast<std::size_t>(n), 1);
  const auto z = dioph::roots(dioph::permuted_polynomial(h, perm));
  const auto c = dioph::permuted_coefficients(h, perm);
  const auto m1 = dioph::build_m1<double>(z, std::span<const double>(c));
  const auto v0 = random_points(static_cast<std::size_t>(n), 9);
  dioph::IntegrateOptions<double> opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  std::size_t acc = 0, rej = 0;
  const std::vector<double> times{1.0, 2.5};
  const auto out = dioph::integrate_field<double>(
      [&m1](std::span<const cplx> y) {
        auto r = m1.entries.apply(y);
        for (auto& x : r) x *= cplx(0, 1);
        return r;
      },
      v0, std::span<const double>(times), opt, acc, rej, [](std::span<const cplx>) {});
  for (std::size_t k = 1; k < out.size(); ++k) {
    EXPECT_LT(max_gap(out[k].state, dioph::linear_evolution_first<double>(m1, v0, out[k].t)), 1e-8);
  }
}

INSTANTIATE_TEST_SUITE_P(SmallN, LinearEvolution, ::testing::Values(2, 3, 4, 5));

}  // namespace
