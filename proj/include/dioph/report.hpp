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

// Batch verification of the spectra over Hermite orderings, plus the JSON and
// CSV report formats used by the command-line tool.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "dioph/dynamics.hpp"
#include "dioph/eigensolver.hpp"
#include "dioph/error.hpp"
#include "dioph/hermite.hpp"
#include "dioph/matrices.hpp"
#include "dioph/polynomial.hpp"
#include "dioph/version.hpp"

namespace dioph {

inline constexpr int kMaxFullSweepOrder = 8;
inline constexpr const char* kJobsEnvVar = "DIOPH_JOBS";

struct Tolerances {
  double root_tol = 1e-10;
  double eig_tol = std::numeric_limits<double>::epsilon();
  double pass_tol = 1e-6;
  double ode_rel_tol = 1e-10;
  double ode_abs_tol = 1e-12;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

enum class OrderingMode { All, Ranks, Sample };

struct OrderingSelection {
  OrderingMode mode = OrderingMode::All;
  std::vector<std::uint64_t> ranks;  // Ranks mode
  std::uint64_t sample_count = 0;    // Sample mode, drawn with RunConfig::seed

  friend bool operator==(const OrderingSelection&, const OrderingSelection&) = default;
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
  int n = 3;
  std::vector<MatrixKind> kinds{MatrixKind::M1, MatrixKind::M2};
  OrderingSelection orderings;
  Tolerances tolerances;
  OutputFormat format = OutputFormat::Json;
  std::uint64_t seed = 42;
  bool force = false;
  unsigned jobs = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Worker count from DIOPH_JOBS, or 1.
inline unsigned default_jobs() {
  if (const char* env = std::getenv(kJobsEnvVar)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.n < 2 || cfg.n > kMaxHermiteOrder) {
    detail::fail(ErrorKind::InvalidArgument, "n must lie in [2, " + std::to_string(kMaxHermiteOrder) + "]");
  }
  if (cfg.kinds.empty()) detail::fail(ErrorKind::InvalidArgument, "at least one matrix kind is required");
  if (cfg.orderings.mode == OrderingMode::All && cfg.n > kMaxFullSweepOrder && !cfg.force) {
    detail::fail(ErrorKind::InvalidArgument, "full ordering sweep above n = 8 requires --force");
  }
  if (cfg.orderings.mode == OrderingMode::All && cfg.n > kMaxRankableOrder) {
    detail::fail(ErrorKind::InvalidArgument, "full ordering sweep impossible above n = 20");
  }
  if (cfg.orderings.mode == OrderingMode::Ranks) {
    if (cfg.orderings.ranks.empty()) detail::fail(ErrorKind::InvalidArgument, "empty rank list");
    if (cfg.n > kMaxRankableOrder) detail::fail(ErrorKind::InvalidArgument, "ranks are only defined for n <= 20");
    const auto total = factorial_u64(static_cast<std::size_t>(cfg.n));
    for (auto r : cfg.orderings.ranks) {
      if (r < 1 || r > total) detail::fail(ErrorKind::InvalidArgument, "rank " + std::to_string(r) + " outside 1..n!");
    }
  }
  if (cfg.orderings.mode == OrderingMode::Sample && cfg.orderings.sample_count == 0) {
    detail::fail(ErrorKind::InvalidArgument, "sample size must be positive");
  }
  const auto& t = cfg.tolerances;
  if (!(t.root_tol > 0 && t.eig_tol > 0 && t.pass_tol > 0 && t.ode_rel_tol > 0 && t.ode_abs_tol > 0)) {
    detail::fail(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
}

/// The orderings a config selects, in ascending lexicographic order.
inline std::vector<PermutationId> select_orderings(const RunConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.n);
  std::vector<PermutationId> out;
  switch (cfg.orderings.mode) {
    case OrderingMode::All:
      for (const auto& p : enumerate_orderings(n)) out.push_back(p);
      break;
    case OrderingMode::Ranks: {
      auto ranks = cfg.orderings.ranks;
      std::sort(ranks.begin(), ranks.end());
      ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
      for (auto r : ranks) out.push_back(ordering_from_rank(n, r));
      break;
    }
    case OrderingMode::Sample: {
      std::mt19937_64 rng(cfg.seed);
      if (n <= static_cast<std::size_t>(kMaxRankableOrder)) {
        const auto total = factorial_u64(n);
        std::vector<std::uint64_t> ranks;
        if (cfg.orderings.sample_count >= total) {
          ranks.resize(total);
          std::iota(ranks.begin(), ranks.end(), std::uint64_t{1});
        } else {
          std::uniform_int_distribution<std::uint64_t> pick(1, total);
          while (ranks.size() < cfg.orderings.sample_count) {
            const auto r = pick(rng);
            if (std::find(ranks.begin(), ranks.end(), r) == ranks.end()) ranks.push_back(r);
          }
          std::sort(ranks.begin(), ranks.end());
        }
        for (auto r : ranks) out.push_back(ordering_from_rank(n, r));
      } else {
        for (std::uint64_t k = 0; k < cfg.orderings.sample_count; ++k) {
          std::vector<std::size_t> word(n);
          std::iota(word.begin(), word.end(), std::size_t{1});
          std::shuffle(word.begin(), word.end(), rng);
          out.push_back(make_permutation(std::move(word)));
        }
      }
      break;
    }
  }
  return out;
}

struct OrderingResult {
  PermutationId perm;
  ComplexVector<double> zeros;
  std::vector<SpectrumReport<double>> spectra;
  CheckStatus status = CheckStatus::Fail;
  /// Set when root finding or the eigensolver did not converge.
  std::optional<std::string> error;

  friend bool operator==(const OrderingResult&, const OrderingResult&) = default;
};

struct Aggregate {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t nonconverged = 0;
  double max_deviation = 0;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct Timing {
  double wall_seconds = 0;
  std::string started_at;

  friend bool operator==(const Timing&, const Timing&) = default;
};

struct VerificationReport {
  RunConfig config;
  std::vector<OrderingResult> results;
  Aggregate aggregate;
  Timing timing;
  std::string version = kVersion;
  std::vector<std::string> notes;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

namespace detail {

inline ZeroVector<double> roots_with_retries(const MonicPolynomial<double>& p, double tol) {
  constexpr double kAngles[] = {0.4, 1.3, 2.2, 3.1};
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      return roots(p, RootOptions<double>{tol, 500, kAngles[attempt]});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonConvergence || attempt + 1 == std::size(kAngles)) throw;
    }
  }
}

inline std::string format_complex(std::complex<double> x) {
  char buf[96];
  auto snap = [](double v) { return std::abs(v) < 1e-14 ? 0.0 : v; };
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", snap(x.real()), snap(x.imag()));
  return buf;
}

}  // namespace detail

/// permute -> roots -> build -> spectrum check, for every requested kind.
inline OrderingResult analyze_ordering(const HermiteZeros<double>& h, const PermutationId& perm,
                                       const std::vector<MatrixKind>& kinds, const Tolerances& tol) {
  OrderingResult out;
  out.perm = perm;
  try {
    const auto z = detail::roots_with_retries(permuted_polynomial(h, perm), tol.root_tol);
    out.zeros.assign(z.begin(), z.end());
    const auto c = permuted_coefficients(h, perm);
    EigenOptions<double> eig;
    eig.tol = tol.eig_tol;
    bool any_fail = false;
    bool any_inconclusive = false;
    for (auto kind : kinds) {
      const auto m = build_matrix<double>(kind, z, std::span<const double>(c), perm);
      try {
        out.spectra.push_back(spectrum_check(m, tol.pass_tol, eig));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonConvergence || !m.conditioning_warning()) throw;
        SpectrumReport<double> r;
        r.kind = kind;
        r.perm = perm;
        r.expected = expected_spectrum(kind, m.n);
        r.max_deviation = std::numeric_limits<double>::infinity();
        r.status = CheckStatus::Inconclusive;
        r.zero_separation = m.zero_separation;
        r.coeff_separation = m.coeff_separation;
        out.spectra.push_back(std::move(r));
      }
      any_fail |= out.spectra.back().status == CheckStatus::Fail;
      any_inconclusive |= out.spectra.back().status == CheckStatus::Inconclusive;
    }
    out.status = any_fail ? CheckStatus::Fail : (any_inconclusive ? CheckStatus::Inconclusive : CheckStatus::Pass);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonConvergence) throw;
    out.error = e.what();
    out.status = CheckStatus::Fail;
  }
  return out;
}

/// Applies fn(i) for i in [0, count) on `jobs` threads; fn writes into slot i.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Observation about the N = 3 reference zero table: the assignment
/// (-sqrt(3/2), sqrt(3/2), 0) is often listed with the same real zeros as
/// (sqrt(3/2), -sqrt(3/2), 0), but its nonzero zeros are complex.
inline std::string n3_table_note(const HermiteZeros<double>& h) {
  auto zeros_text = [&h](std::uint64_t rank) {
    const auto z = detail::roots_with_retries(permuted_polynomial(h, ordering_from_rank(3, rank)), 1e-12);
    std::string s = "{";
    for (std::size_t k = 0; k < z.size(); ++k) s += (k ? ", " : "") + detail::format_complex(z[k]);
    return s + "}";
  };
  // rank 5 is word (3,1,2), rank 2 is word (1,3,2)
  return "N=3 reference table: assignment (-sqrt(3/2), sqrt(3/2), 0) [rank 2, word 1 3 2] is sometimes listed with "
         "the zeros of assignment (sqrt(3/2), -sqrt(3/2), 0) [rank 5, word 3 1 2], " +
         zeros_text(5) + "; recomputed zeros are " + zeros_text(2);
}

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline VerificationReport run_verification(const RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.config = cfg;
  report.timing.started_at = utc_timestamp();

  const auto h = hermite_zeros<double>(cfg.n);
  const auto orderings = select_orderings(cfg);
  report.results.resize(orderings.size());
  parallel_for(orderings.size(), cfg.jobs, [&](std::size_t i) {
    report.results[i] = analyze_ordering(h, orderings[i], cfg.kinds, cfg.tolerances);
  });

  for (const auto& r : report.results) {
    if (r.error) {
      ++report.aggregate.nonconverged;
      continue;
    }
    switch (r.status) {
      case CheckStatus::Pass: ++report.aggregate.pass; break;
      case CheckStatus::Fail: ++report.aggregate.fail; break;
      case CheckStatus::Inconclusive: ++report.aggregate.inconclusive; break;
    }
    for (const auto& s : r.spectra) {
      if (std::isfinite(s.max_deviation)) {
        report.aggregate.max_deviation = std::max(report.aggregate.max_deviation, s.max_deviation);
      }
    }
  }
  if (cfg.n == 3) report.notes.push_back(n3_table_note(h));
  if (report.aggregate.inconclusive > 0) {
    report.notes.push_back("inconclusive orderings have a zero or coefficient separation below 1e-6");
  }
  report.timing.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// 0 pass, 1 spectral failure, 3 non-convergence.
inline int exit_code(const VerificationReport& r) {
  if (r.aggregate.nonconverged > 0) return 3;
  if (r.aggregate.fail > 0) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Serialisation

using json = nlohmann::json;

namespace detail {

inline json complex_to_json(std::complex<double> x) { return json{{"re", x.real()}, {"im", x.imag()}}; }

inline std::complex<double> complex_from_json(const json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline json complex_list_to_json(std::span<const std::complex<double>> xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(complex_to_json(x));
  return a;
}

inline ComplexVector<double> complex_list_from_json(const json& j) {
  ComplexVector<double> out;
  for (const auto& x : j) out.push_back(complex_from_json(x));
  return out;
}

// Non-finite doubles are written as null and read back as +infinity.
inline json real_to_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
inline double real_from_json(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

inline json perm_to_json(const PermutationId& p) { return json{{"rank", p.ordinal}, {"word", p.word}}; }

inline PermutationId perm_from_json(const json& j) {
  PermutationId p;
  p.word = j.at("word").get<std::vector<std::size_t>>();
  p.n = p.word.size();
  p.ordinal = j.at("rank").get<std::uint64_t>();
  return p;
}

inline CheckStatus status_from_string(std::string_view s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "inconclusive") return CheckStatus::Inconclusive;
  fail(ErrorKind::InvalidArgument, "unknown status '" + std::string(s) + "'");
}

inline std::string_view mode_name(OrderingMode m) {
  switch (m) {
    case OrderingMode::All: return "all";
    case OrderingMode::Ranks: return "ranks";
    case OrderingMode::Sample: return "sample";
  }
  return "all";
}

inline OrderingMode mode_from_string(std::string_view s) {
  if (s == "all") return OrderingMode::All;
  if (s == "ranks") return OrderingMode::Ranks;
  if (s == "sample") return OrderingMode::Sample;
  fail(ErrorKind::InvalidArgument, "unknown ordering mode '" + std::string(s) + "'");
}

inline void write_json_value(std::string& out, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write_json_value(out, it.value(), indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_json_value(out, j[i], indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

// 64-bit FNV-1a
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

/// Pretty JSON with every floating-point number printed to 17 significant digits.
inline std::string dump_json(const json& j, int indent = 2) {
  std::string out;
  detail::write_json_value(out, j, indent, 0);
  out += "\n";
  return out;
}

inline json to_json(const Tolerances& t) {
  return json{{"root_tol", t.root_tol},
              {"eig_tol", t.eig_tol},
              {"pass_tol", t.pass_tol},
              {"ode_rel_tol", t.ode_rel_tol},
              {"ode_abs_tol", t.ode_abs_tol}};
}

inline json to_json(const RunConfig& c) {
  json kinds = json::array();
  for (auto k : c.kinds) kinds.push_back(std::string(to_string(k)));
  json orderings{{"mode", std::string(detail::mode_name(c.orderings.mode))}};
  if (c.orderings.mode == OrderingMode::Ranks) orderings["ranks"] = c.orderings.ranks;
  if (c.orderings.mode == OrderingMode::Sample) orderings["count"] = c.orderings.sample_count;
  return json{{"n", c.n},
              {"kinds", kinds},
              {"orderings", orderings},
              {"tolerances", to_json(c.tolerances)},
              {"output_format", c.format == OutputFormat::Json ? "json" : "csv"},
              {"seed", c.seed},
              {"force", c.force},
              {"jobs", c.jobs}};
}

inline json to_json(const SpectrumReport<double>& r) {
  return json{{"kind", std::string(to_string(r.kind))},
              {"status", std::string(to_string(r.status))},
              {"pass", r.pass},
              {"max_deviation", detail::real_to_json(r.max_deviation)},
              {"eigenvalues", detail::complex_list_to_json(r.eigenvalues)},
              {"expected", r.expected},
              {"zero_separation", detail::real_to_json(r.zero_separation)},
              {"coeff_separation", detail::real_to_json(r.coeff_separation)}};
}

inline json to_json(const OrderingResult& r) {
  json spectra = json::array();
  for (const auto& s : r.spectra) spectra.push_back(to_json(s));
  json j{{"ordering", detail::perm_to_json(r.perm)},
         {"zeros", detail::complex_list_to_json(r.zeros)},
         {"status", std::string(to_string(r.status))},
         {"spectra", spectra}};
  if (r.error) j["error"] = *r.error;
  return j;
}

/// Everything except timing and the hash; two runs with the same config give identical text.
inline json deterministic_json(const VerificationReport& r) {
  json results = json::array();
  for (const auto& x : r.results) results.push_back(to_json(x));
  return json{{"config", to_json(r.config)},
              {"results", results},
              {"aggregate",
               {{"pass", r.aggregate.pass},
                {"fail", r.aggregate.fail},
                {"inconclusive", r.aggregate.inconclusive},
                {"nonconverged", r.aggregate.nonconverged},
                {"orderings", r.results.size()},
                {"max_deviation", r.aggregate.max_deviation}}},
              {"notes", r.notes},
              {"version", r.version}};
}

inline std::uint64_t determinism_hash(const VerificationReport& r) {
  return detail::fnv1a(dump_json(deterministic_json(r)));
}

inline json to_json(const VerificationReport& r) {
  json j = deterministic_json(r);
  char hex[20];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(determinism_hash(r)));
  j["determinism_hash"] = hex;
  j["timing"] = {{"wall_seconds", r.timing.wall_seconds}, {"started_at", r.timing.started_at}};
  return j;
}

inline Tolerances tolerances_from_json(const json& j) {
  Tolerances t;
  t.root_tol = j.at("root_tol").get<double>();
  t.eig_tol = j.at("eig_tol").get<double>();
  t.pass_tol = j.at("pass_tol").get<double>();
  t.ode_rel_tol = j.at("ode_rel_tol").get<double>();
  t.ode_abs_tol = j.at("ode_abs_tol").get<double>();
  return t;
}

inline RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.n = j.at("n").get<int>();
  c.kinds.clear();
  for (const auto& k : j.at("kinds")) c.kinds.push_back(parse_matrix_kind(k.get<std::string>()));
  const auto& o = j.at("orderings");
  c.orderings.mode = detail::mode_from_string(o.at("mode").get<std::string>());
  if (o.contains("ranks")) c.orderings.ranks = o.at("ranks").get<std::vector<std::uint64_t>>();
  if (o.contains("count")) c.orderings.sample_count = o.at("count").get<std::uint64_t>();
  c.tolerances = tolerances_from_json(j.at("tolerances"));
  c.format = j.at("output_format").get<std::string>() == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.force = j.at("force").get<bool>();
  c.jobs = j.at("jobs").get<unsigned>();
  return c;
}

inline SpectrumReport<double> spectrum_from_json(const json& j, const PermutationId& perm) {
  SpectrumReport<double> r;
  r.kind = parse_matrix_kind(j.at("kind").get<std::string>());
  r.status = detail::status_from_string(j.at("status").get<std::string>());
  r.pass = j.at("pass").get<bool>();
  r.max_deviation = detail::real_from_json(j.at("max_deviation"));
  r.eigenvalues = detail::complex_list_from_json(j.at("eigenvalues"));
  r.expected = j.at("expected").get<std::vector<long long>>();
  r.zero_separation = detail::real_from_json(j.at("zero_separation"));
  r.coeff_separation = detail::real_from_json(j.at("coeff_separation"));
  r.perm = perm;
  return r;
}

inline VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.config = config_from_json(j.at("config"));
  for (const auto& x : j.at("results")) {
    OrderingResult o;
    o.perm = detail::perm_from_json(x.at("ordering"));
    o.zeros = detail::complex_list_from_json(x.at("zeros"));
    o.status = detail::status_from_string(x.at("status").get<std::string>());
    for (const auto& s : x.at("spectra")) o.spectra.push_back(spectrum_from_json(s, o.perm));
    if (x.contains("error")) o.error = x.at("error").get<std::string>();
    r.results.push_back(std::move(o));
  }
  const auto& a = j.at("aggregate");
  r.aggregate.pass = a.at("pass").get<std::uint64_t>();
  r.aggregate.fail = a.at("fail").get<std::uint64_t>();
  r.aggregate.inconclusive = a.at("inconclusive").get<std::uint64_t>();
  r.aggregate.nonconverged = a.at("nonconverged").get<std::uint64_t>();
  r.aggregate.max_deviation = a.at("max_deviation").get<double>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.version = j.at("version").get<std::string>();
  if (j.contains("timing")) {
    r.timing.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
    r.timing.started_at = j.at("timing").at("started_at").get<std::string>();
  }
  return r;
}

inline std::string word_string(const PermutationId& p) {
  std::string s;
  for (std::size_t i = 0; i < p.word.size(); ++i) s += (i ? " " : "") + std::to_string(p.word[i]);
  return s;
}

/// One row per (ordering, kind).
inline std::string to_csv(const VerificationReport& r) {
  std::ostringstream out;
  out << "rank,word,kind,status,max_deviation,zero_separation,coeff_separation,eigenvalues\n";
  char buf[64];
  auto num = [&buf](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  for (const auto& o : r.results) {
    if (o.error) {
      out << o.perm.ordinal << ',' << word_string(o.perm) << ",,error,,,,\n";
      continue;
    }
    for (const auto& s : o.spectra) {
      out << o.perm.ordinal << ',' << word_string(o.perm) << ',' << to_string(s.kind) << ',' << to_string(s.status)
          << ',' << num(s.max_deviation) << ',' << num(s.zero_separation) << ',' << num(s.coeff_separation) << ',';
      for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        out << (k ? ";" : "") << num(s.eigenvalues[k].real());
        std::snprintf(buf, sizeof buf, "%+.17gi", s.eigenvalues[k].imag());
        out << buf;
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace dioph
