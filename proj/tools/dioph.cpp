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

// dioph command-line tool: hermite-zeros, verify, simulate, oracle.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dioph/dioph.hpp"
#include "dioph/report.hpp"

namespace {

using dioph::json;

struct Common {
  int n = 3;
  std::string format = "json";
  std::string out;
  dioph::Tolerances tol;
  std::uint64_t seed = 42;
  unsigned jobs = dioph::default_jobs();
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--n", c.n, "Polynomial degree N")->capture_default_str();
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app->add_option("--out", c.out, "Also write the output to FILE");
  app->add_option("--tol-root", c.tol.root_tol, "Root-finder residual tolerance")->capture_default_str();
  app->add_option("--tol-eig", c.tol.eig_tol, "Eigensolver deflation tolerance")->capture_default_str();
  app->add_option("--tol-pass", c.tol.pass_tol, "Spectrum pass tolerance")->capture_default_str();
  app->add_option("--tol-ode-rel", c.tol.ode_rel_tol, "Integrator relative tolerance")->capture_default_str();
  app->add_option("--tol-ode-abs", c.tol.ode_abs_tol, "Integrator absolute tolerance")->capture_default_str();
  app->add_option("--seed", c.seed, "Seed for sampled orderings and perturbations")->capture_default_str();
  app->add_option("--jobs", c.jobs, "Worker threads (default from DIOPH_JOBS)")->check(CLI::Range(1, 1024));
}

void emit(const Common& c, const std::string& text) {
  std::cout << text;
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) dioph::detail::fail(dioph::ErrorKind::InvalidArgument, "cannot open '" + c.out + "' for writing");
    f << text;
  }
}

void require_n(int n) {
  if (n < 2 || n > dioph::kMaxHermiteOrder) {
    dioph::detail::fail(dioph::ErrorKind::InvalidArgument,
                        "--n must lie in [2, " + std::to_string(dioph::kMaxHermiteOrder) + "]");
  }
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int exit_for(dioph::ErrorKind k) {
  using dioph::ErrorKind;
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::DimensionMismatch: return 2;
    case ErrorKind::NearCollision:
    case ErrorKind::CollisionAbort:
    case ErrorKind::StepFloorReached: return 4;
    default: return 3;
  }
}

// ---------------------------------------------------------------------------

void print_mu_table() {
  std::cout << "N=3 reference labels, s = sqrt(3/2); coefficients listed as (c1, c2, c3)\n";
  std::cout << "label  coefficients    word   rank\n";
  const char* coeffs[] = {"( 0,  s, -s)", "( 0, -s,  s)", "( s,  0, -s)", "( s, -s,  0)", "(-s,  s,  0)",
                          "(-s,  0,  s)"};
  const auto& words = dioph::published_n3_words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto p = dioph::make_permutation({words[i][0], words[i][1], words[i][2]});
    std::cout << "mu=" << i + 1 << "   " << coeffs[i] << "    " << dioph::word_string(p) << "  " << p.ordinal << "\n";
  }
}

int cmd_hermite_zeros(const Common& c) {
  require_n(c.n);
  const auto h = dioph::hermite_zeros<double>(c.n);
  if (c.format == "csv") {
    std::string s = "index,zero,residual_first,residual_second\n";
    for (std::size_t i = 0; i < h.zeros.size(); ++i) {
      s += std::to_string(i + 1) + "," + num(h.zeros[i]) + "," + num(h.residual_first) + "," +
           num(h.residual_second) + "\n";
    }
    emit(c, s);
  } else {
    emit(c, dioph::dump_json(json{{"n", c.n},
                                  {"zeros", h.zeros},
                                  {"residual_first", h.residual_first},
                                  {"residual_second", h.residual_second},
                                  {"version", dioph::kVersion}}));
  }
  return 0;
}

struct VerifyArgs {
  std::vector<std::string> kinds{"M1", "M2"};
  std::vector<std::uint64_t> ranks;
  std::uint64_t sample = 0;
  bool force = false;
};

int cmd_verify(const Common& c, const VerifyArgs& v) {
  require_n(c.n);
  dioph::RunConfig cfg;
  cfg.n = c.n;
  cfg.kinds.clear();
  for (const auto& k : v.kinds) cfg.kinds.push_back(dioph::parse_matrix_kind(k));
  if (!v.ranks.empty() && v.sample > 0) {
    dioph::detail::fail(dioph::ErrorKind::InvalidArgument, "--ranks and --sample are mutually exclusive");
  }
  if (!v.ranks.empty()) {
    cfg.orderings.mode = dioph::OrderingMode::Ranks;
    cfg.orderings.ranks = v.ranks;
  } else if (v.sample > 0) {
    cfg.orderings.mode = dioph::OrderingMode::Sample;
    cfg.orderings.sample_count = v.sample;
  }
  cfg.tolerances = c.tol;
  cfg.format = c.format == "csv" ? dioph::OutputFormat::Csv : dioph::OutputFormat::Json;
  cfg.seed = c.seed;
  cfg.force = v.force;
  cfg.jobs = c.jobs;

  const auto report = dioph::run_verification(cfg);
  emit(c, cfg.format == dioph::OutputFormat::Csv ? dioph::to_csv(report) : dioph::dump_json(dioph::to_json(report)));
  std::cerr << "orderings " << report.results.size() << ": pass " << report.aggregate.pass << ", fail "
            << report.aggregate.fail << ", inconclusive " << report.aggregate.inconclusive << ", nonconverged "
            << report.aggregate.nonconverged << ", max deviation " << report.aggregate.max_deviation << "\n";
  return dioph::exit_code(report);
}

struct SimulateArgs {
  std::string system = "gamma1";
  std::uint64_t rank = 1;
  double t_end = 2 * std::numbers::pi;
  double radius = 1e-2;
  std::size_t samples = 1;
  int period_multiples = 0;
  double period_tol = 1e-5;
};

json complex_list(const dioph::ComplexVector<double>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(json{{"re", x.real()}, {"im", x.imag()}});
  return a;
}

int cmd_simulate(const Common& c, const SimulateArgs& s) {
  require_n(c.n);
  if (s.t_end < 0) dioph::detail::fail(dioph::ErrorKind::InvalidArgument, "--t-end must be >= 0");
  if (!(s.radius >= 0)) dioph::detail::fail(dioph::ErrorKind::InvalidArgument, "--radius must be >= 0");
  const auto flow = dioph::parse_flow(s.system);
  const auto h = dioph::hermite_zeros<double>(c.n);
  const auto perm = dioph::ordering_from_rank(static_cast<std::size_t>(c.n), s.rank);
  const auto eq = dioph::equilibrium_state<double>(flow, h, perm, dioph::RootOptions<double>{c.tol.root_tol});
  const auto x0 = dioph::perturbed(eq, s.radius, c.seed);

  dioph::TrajectoryRecord<double> rec;
  rec.flow = flow;
  rec.n = static_cast<std::size_t>(c.n);
  if (s.t_end > 0) {
    dioph::IntegrateOptions<double> opt;
    opt.rel_tol = c.tol.ode_rel_tol;
    opt.abs_tol = c.tol.ode_abs_tol;
    opt.samples = std::max<std::size_t>(s.samples, 1);
    rec = dioph::integrate<double>(flow, x0, s.t_end, opt);
  } else {
    rec.samples.push_back({0.0, x0});
  }
  const double distance = dioph::return_distance(rec);
  const double periods = s.t_end / (2 * std::numbers::pi);
  const bool whole_periods = s.t_end > 0 && std::abs(periods - std::round(periods)) < 1e-12;
  std::optional<bool> periodic;
  if (whole_periods || s.t_end == 0) periodic = distance <= s.period_tol;
  std::optional<int> multiple;
  if (s.period_multiples > 0) {
    dioph::IntegrateOptions<double> opt;
    opt.rel_tol = c.tol.ode_rel_tol;
    opt.abs_tol = c.tol.ode_abs_tol;
    multiple = dioph::detect_period_multiple<double>(flow, x0, s.period_multiples, s.period_tol, opt);
  }

  if (c.format == "csv") {
    std::string out = "t";
    for (std::size_t i = 0; i < x0.size(); ++i) out += ",re" + std::to_string(i + 1) + ",im" + std::to_string(i + 1);
    out += "\n";
    for (const auto& smp : rec.samples) {
      out += num(smp.t);
      for (const auto& x : smp.state) out += "," + num(x.real()) + "," + num(x.imag());
      out += "\n";
    }
    emit(c, out);
  } else {
    json samples = json::array();
    for (const auto& smp : rec.samples) samples.push_back(json{{"t", smp.t}, {"state", complex_list(smp.state)}});
    json j{{"system", s.system},
           {"n", c.n},
           {"ordering", {{"rank", perm.ordinal}, {"word", perm.word}}},
           {"t_end", s.t_end},
           {"seed", c.seed},
           {"radius", s.radius},
           {"tolerances", dioph::to_json(c.tol)},
           {"equilibrium", complex_list(eq)},
           {"samples", samples},
           {"steps", {{"accepted", rec.accepted}, {"rejected", rec.rejected}}},
           {"min_separation_seen", std::isfinite(rec.min_separation_seen) ? json(rec.min_separation_seen) : json()},
           {"return_distance", distance},
           {"period_tol", s.period_tol},
           {"periodic", periodic ? json(*periodic) : json()},
           {"version", dioph::kVersion}};
    if (s.period_multiples > 0) j["period_multiple"] = multiple ? json(*multiple) : json();
    if (dioph::is_second_order(flow)) {
      j["notes"] = {"second-order linear modes use angular frequency sqrt(eigenvalue); the perturbation radius covers "
                    "positions and velocities together"};
    }
    emit(c, dioph::dump_json(j));
  }
  std::cerr << "return distance " << num(distance) << "\n";
  return periodic.value_or(true) ? 0 : 1;
}

struct OracleArgs {
  std::string kind = "M1";
  std::uint64_t rank = 1;
  double h = 1e-5;
  double threshold = 1e-4;
  bool self_test = false;
};

// FD Jacobian of x -> A x against A for a seeded complex A.
double oracle_self_test(std::size_t n, double h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0, 1);
  dioph::DenseMatrix<double> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = {normal(rng), normal(rng)};
  }
  dioph::ComplexVector<double> x(n);
  for (auto& v : x) v = {normal(rng), normal(rng)};
  const auto jac = dioph::fd_jacobian<double>([&a](std::span<const std::complex<double>> y) { return a.apply(y); },
                                              std::span<const std::complex<double>>(x), h);
  return dioph::max_abs_difference(jac, a) / a.max_abs();
}

int cmd_oracle(const Common& c, const OracleArgs& o) {
  require_n(c.n);
  json j{{"n", c.n}, {"h", o.h}, {"version", dioph::kVersion}};
  double deviation = 0;
  double threshold = o.threshold;
  if (o.self_test) {
    threshold = 1e-10;
    deviation = oracle_self_test(static_cast<std::size_t>(c.n), o.h, c.seed);
    j["self_test"] = true;
    j["seed"] = c.seed;
  } else {
    const auto kind = dioph::parse_matrix_kind(o.kind);
    const auto hz = dioph::hermite_zeros<double>(c.n);
    const auto perm = dioph::ordering_from_rank(static_cast<std::size_t>(c.n), o.rank);
    const auto z = dioph::roots(dioph::permuted_polynomial(hz, perm), dioph::RootOptions<double>{c.tol.root_tol});
    const auto coeffs = dioph::permuted_coefficients(hz, perm);
    deviation = dioph::jacobian_oracle_deviation<double>(kind, z, std::span<const double>(coeffs), o.h);
    j["kind"] = std::string(dioph::to_string(kind));
    j["ordering"] = {{"rank", perm.ordinal}, {"word", perm.word}};
  }
  const bool pass = deviation < threshold;
  j["max_relative_deviation"] = deviation;
  j["threshold"] = threshold;
  j["pass"] = pass;
  if (c.format == "csv") {
    emit(c, "n,kind,h,max_relative_deviation,threshold,pass\n" + std::to_string(c.n) + "," +
                (o.self_test ? std::string("self-test") : o.kind) + "," + num(o.h) + "," + num(deviation) + "," +
                num(threshold) + "," + (pass ? "true" : "false") + "\n");
  } else {
    emit(c, dioph::dump_json(j));
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diophantine spectra of matrices built from permuted Hermite zeros"};
  app.set_version_flag("--version", std::string("dioph ") + dioph::kVersion);
  bool mu_table = false;
  app.add_flag("--paper-mu-table", mu_table, "Print the N=3 reference labels with their words and ranks");

  Common common;
  auto* hz = app.add_subcommand("hermite-zeros", "Ascending Hermite zeros and equilibrium residuals");
  add_common(hz, common);

  VerifyArgs verify;
  auto* ver = app.add_subcommand("verify", "Certify the spectra of M1 and M2 over orderings");
  add_common(ver, common);
  ver->add_option("--kinds", verify.kinds, "Matrix kinds")->check(CLI::IsMember({"M1", "M2"}))->capture_default_str();
  ver->add_option("--ranks", verify.ranks, "Lexicographic ranks of the orderings to check");
  ver->add_option("--sample", verify.sample, "Check this many seeded random orderings");
  ver->add_flag("--force", verify.force, "Allow a full sweep above N = 8");
  ver->add_flag("--paper-mu-table", mu_table, "Print the N=3 reference labels with their words and ranks");

  SimulateArgs sim;
  auto* simc = app.add_subcommand("simulate", "Integrate a flow from a perturbed equilibrium");
  add_common(simc, common);
  simc->add_option("--system", sim.system, "Flow")
      ->check(CLI::IsMember({"gamma1", "zeta1", "gamma2", "zeta2"}))
      ->capture_default_str();
  simc->add_option("--rank", sim.rank, "Ordering rank")->capture_default_str();
  simc->add_option("--t-end", sim.t_end, "Final time (default 2 pi)");
  simc->add_option("--radius", sim.radius, "Perturbation radius")->capture_default_str();
  simc->add_option("--samples", sim.samples, "Uniform sample intervals on [0, t_end]")->capture_default_str();
  simc->add_option("--period-multiples", sim.period_multiples, "Search for a return within this many periods");
  simc->add_option("--period-tol", sim.period_tol, "Return distance counted as periodic")->capture_default_str();

  OracleArgs oracle;
  auto* orc = app.add_subcommand("oracle", "Compare a closed-form matrix with the FD Jacobian of its flow");
  orc->set_help_flag("--help", "Print this help message and exit");
  add_common(orc, common);
  orc->add_option("--kind", oracle.kind, "Matrix kind")->check(CLI::IsMember({"M1", "M2"}))->capture_default_str();
  orc->add_option("--rank", oracle.rank, "Ordering rank")->capture_default_str();
  orc->add_option("--h", oracle.h, "Finite-difference step")->capture_default_str();
  orc->add_option("--threshold", oracle.threshold, "Pass threshold")->capture_default_str();
  orc->add_flag("--self-test", oracle.self_test, "Check the FD oracle on a seeded linear field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mu_table) {
      print_mu_table();
      return 0;
    }
    if (hz->parsed()) return cmd_hermite_zeros(common);
    if (ver->parsed()) return cmd_verify(common, verify);
    if (simc->parsed()) return cmd_simulate(common, sim);
    if (orc->parsed()) return cmd_oracle(common, oracle);
    std::cerr << app.help();
    return 2;
  } catch (const dioph::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
