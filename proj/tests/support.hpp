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

#pragma once

#include <gtest/gtest.h>

#include <complex>
#include <cstdint>
#include <random>

#include "dioph/error.hpp"
#include "dioph/polynomial.hpp"

namespace testing_support {

/// Kind of the dioph::Error thrown by f; records a failure if nothing is thrown.
template <class F>
dioph::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const dioph::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no dioph::Error thrown";
  return dioph::ErrorKind::InvalidArgument;
}

inline dioph::ComplexVector<double> random_points(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  dioph::ComplexVector<double> z(n);
  for (auto& x : z) x = {u(rng), u(rng)};
  return z;
}

}  // namespace testing_support
