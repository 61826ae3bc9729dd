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

// Perturb the equilibrium of each flow at N = 3 and integrate over one period.

#include <cstdio>
#include <numbers>

#include "dioph/dioph.hpp"

int main() {
  constexpr int n = 3;
  const auto h = dioph::hermite_zeros<double>(n);
  const auto perm = dioph::ordering_from_rank(n, 4);
  int status = 0;
  for (auto flow : {dioph::Flow::Gamma1, dioph::Flow::Zeta1, dioph::Flow::Gamma2, dioph::Flow::Zeta2}) {
    const auto start = dioph::perturbed(dioph::equilibrium_state<double>(flow, h, perm), 1e-2, 42);
    const auto rec = dioph::integrate<double>(flow, start, 2 * std::numbers::pi);
    const double d = dioph::return_distance(rec);
    std::printf("%-7s return distance %.3e after %zu steps\n", dioph::to_string(flow).data(), d, rec.accepted);
    if (d > 1e-5) status = 1;
  }
  return status;
}
