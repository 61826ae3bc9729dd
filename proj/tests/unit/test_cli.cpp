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

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

using nlohmann::json;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DIOPH_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(CliHermiteZeros, OrderThree) {
  const auto r = run("hermite-zeros --n 3");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["zeros"][0].get<double>(), -1.224744871391589, 1e-15);
  EXPECT_EQ(j["zeros"][1].get<double>(), 0.0);
  EXPECT_NEAR(j["zeros"][2].get<double>(), 1.224744871391589, 1e-15);
  EXPECT_LT(j["residual_first"].get<double>(), 1e-10);
  EXPECT_LT(j["residual_second"].get<double>(), 1e-10);
  EXPECT_NE(r.out.find("1.2247448713915889"), std::string::npos);
}

TEST(CliHermiteZeros, OrderTwoAndCsv) {
  const auto r = run("hermite-zeros --n 2 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1,-0.70710678118654"), std::string::npos);
  EXPECT_NE(r.out.find("2,0.70710678118654"), std::string::npos);
}

TEST(CliHermiteZeros, BelowMinimumIsUsageError) {
  EXPECT_EQ(run("hermite-zeros --n 1").code, 2);
  EXPECT_EQ(run("hermite-zeros --n 31").code, 2);
}

TEST(CliVerify, NThreeEachKind) {
  for (const char* kind : {"M1", "M2"}) {
    const auto r = run(std::string("verify --n 3 --kinds ") + kind);
    ASSERT_EQ(r.code, 0) << kind;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["aggregate"]["pass"].get<int>(), 6);
    EXPECT_EQ(j["aggregate"]["fail"].get<int>(), 0);
    EXPECT_EQ(j["results"].size(), 6u);
  }
}

TEST(CliVerify, ByteIdenticalApartFromTiming) {
  auto a = json::parse(run("verify --n 4 --sample 5 --seed 3").out);
  auto b = json::parse(run("verify --n 4 --sample 5 --seed 3 --jobs 1").out);
  EXPECT_EQ(a["determinism_hash"], b["determinism_hash"]);
  a.erase("timing");
  b.erase("timing");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(CliVerify, OutFileMatchesStdout) {
  const std::string path = ::testing::TempDir() + "dioph_verify.json";
  const auto r = run("verify --n 3 --ranks 2 5 --out " + path);
  ASSERT_EQ(r.code, 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), r.out);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["results"][0]["ordering"]["rank"].get<int>(), 2);
  EXPECT_EQ(j["results"][1]["ordering"]["word"], json({3, 1, 2}));
  std::remove(path.c_str());
}

TEST(CliVerify, FullSweepAboveEightNeedsForce) {
  EXPECT_EQ(run("verify --n 9").code, 2);
}

TEST(CliVerify, UsageErrors) {
  EXPECT_EQ(run("verify --n 3 --format xml").code, 2);
  EXPECT_EQ(run("verify --n 3 --kinds M3").code, 2);
  EXPECT_EQ(run("verify --n 3 --ranks 7").code, 2);
  EXPECT_EQ(run("verify --n 3 --bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(CliVerify, Csv) {
  const auto r = run("verify --n 3 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("rank,word,kind,status", 0), 0u);
}

TEST(CliSimulate, GammaFirstReturns) {
  const auto r = run("simulate --system gamma1 --n 4");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_LT(j["return_distance"].get<double>(), 1e-6);
  EXPECT_TRUE(j["periodic"].get<bool>());
}

TEST(CliSimulate, ZeroDurationHasZeroDistance) {
  const auto r = run("simulate --system zeta1 --n 3 --t-end 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["return_distance"].get<double>(), 0.0);
}

TEST(CliSimulate, ZetaSecondAtFirstPublishedLabel) {
  const auto r = run("simulate --system zeta2 --n 3 --rank 4 --samples 4 --period-multiples 2");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_LT(j["return_distance"].get<double>(), 1e-5);
  EXPECT_EQ(j["samples"].size(), 5u);
  EXPECT_EQ(j["period_multiple"].get<int>(), 1);
}

TEST(CliSimulate, BadSystemIsUsageError) {
  EXPECT_EQ(run("simulate --system omega --n 3").code, 2);
  EXPECT_EQ(run("simulate --n 3 --rank 9").code, 2);
}

TEST(CliOracle, ClosedFormsAgreeWithFiniteDifferences) {
  auto j = json::parse(run("oracle --n 2 --kind M1").out);
  EXPECT_LT(j["max_relative_deviation"].get<double>(), 1e-5);
  const auto r = run("oracle --n 3 --kind M2");
  EXPECT_EQ(r.code, 0);
  j = json::parse(r.out);
  EXPECT_LT(j["max_relative_deviation"].get<double>(), 1e-4);
}

TEST(CliOracle, SelfTest) {
  const auto r = run("oracle --n 4 --self-test");
  ASSERT_EQ(r.code, 0);
  EXPECT_LT(json::parse(r.out)["max_relative_deviation"].get<double>(), 1e-10);
  EXPECT_EQ(run("oracle --n 3 --h 1").code, 2);
}

TEST(CliMuTable, MapsLabelsToRanks) {
  const auto r = run("--paper-mu-table");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mu=1   ( 0,  s, -s)    2 3 1  4"), std::string::npos);
  EXPECT_NE(r.out.find("mu=5   (-s,  s,  0)    1 3 2  2"), std::string::npos);
}

}  // namespace
