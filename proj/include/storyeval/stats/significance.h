// Copyright 2026 The Storyeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STORYEVAL_STATS_SIGNIFICANCE_H_
#define STORYEVAL_STATS_SIGNIFICANCE_H_

#include <span>
#include <vector>

namespace storyeval::stats {

struct WilliamsResult {
  double t = 0.0;
  int df = 0;                  // n - 3
  double p_one_sided = 0.5;    // P(T_df >= t)
  double r12 = 0.0;
  double r13 = 0.0;
  double r23 = 0.0;
  double determinant_k = 0.0;  // 1 - r12^2 - r13^2 - r23^2 + 2 r12 r13 r23
};

// Williams's t for H0: corr(X1, X2) == corr(X1, X3), where X2 and X3 are
// themselves correlated (r23). One-sided: small p supports r12 > r13.
//
// When r12 == r13 the statistic is 0 and p is 0.5 for any r23, including
// the degenerate r23 == 1 of a measure compared with itself. Otherwise
// throws DataError if n <= 3, any |r| > 1, the determinant is negative,
// or the statistic's denominator vanishes.
WilliamsResult WilliamsTest(double r12, double r13, double r23, int n);

// Benjamini-Hochberg step-up adjustment. Output is in input order, capped
// at 1. Throws DataError if any p lies outside [0, 1].
std::vector<double> BhAdjust(std::span<const double> p_values);

}  // namespace storyeval::stats

#endif  // STORYEVAL_STATS_SIGNIFICANCE_H_
