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

// Build M1 and M2 for every ordering of the N = 4 Hermite zeros and print
// the eigenvalues of the first few.

#include <cstdio>

#include "dioph/dioph.hpp"

int main() {
  constexpr int n = 4;
  const auto h = dioph::hermite_zeros<double>(n);
  std::printf("H_%d zeros:", n);
  for (double c : h.zeros) std::printf(" %.12f", c);
  std::printf("\n");

  double worst = 0;
  int shown = 0;
  for (const auto& perm : dioph::enumerate_orderings(n)) {
    const auto z = dioph::roots(dioph::permuted_polynomial(h, perm));
    const auto c = dioph::permuted_coefficients(h, perm);
    for (auto kind : {dioph::MatrixKind::M1, dioph::MatrixKind::M2}) {
      const auto m = dioph::build_matrix<double>(kind, z, std::span<const double>(c), perm);
      const auto r = dioph::spectrum_check(m, 1e-6);
      worst = std::max(worst, r.max_deviation);
      if (shown < 4) {
        std::printf("rank %2llu %s:", static_cast<unsigned long long>(perm.ordinal), dioph::to_string(kind).data());
        for (const auto& v : r.eigenvalues) std::printf(" %+.10f%+.1ei", v.real(), v.imag());
        std::printf("\n");
        ++shown;
      }
    }
  }
  std::printf("largest deviation over all 24 orderings: %.3e\n", worst);
  return worst < 1e-6 ? 0 : 1;
}
