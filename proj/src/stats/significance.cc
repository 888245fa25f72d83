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

#include "storyeval/stats/significance.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "storyeval/error.h"
#include "storyeval/stats/distributions.h"

namespace storyeval::stats {

WilliamsResult WilliamsTest(double r12, double r13, double r23, int n) {
  for (double r : {r12, r13, r23}) {
    if (!std::isfinite(r) || std::abs(r) > 1.0) {
      throw DataError("Williams test: correlation outside [-1, 1]");
    }
  }
  if (n <= 3) throw DataError("Williams test needs n > 3, got " + std::to_string(n));

  WilliamsResult result;
  result.r12 = r12;
  result.r13 = r13;
  result.r23 = r23;
  result.df = n - 3;
  result.determinant_k = 1.0 - r12 * r12 - r13 * r13 - r23 * r23 + 2.0 * r12 * r13 * r23;
  if (r12 == r13) {
    result.t = 0.0;
    result.p_one_sided = 0.5;
    return result;
  }
  // |R| = 0 is the boundary of valid triples (for example r12 = 1); only a
  // negative determinant beyond rounding is inconsistent.
  if (result.determinant_k < -1e-12) {
    throw DataError("Williams test: inconsistent correlation triple (determinant < 0)");
  }
  const double det = std::max(result.determinant_k, 0.0);

  const double nm1 = n - 1.0;
  const double numerator = (r12 - r13) * std::sqrt(nm1 * (1.0 + r23));
  const double sum = r12 + r13;
  const double denominator = std::sqrt(2.0 * det * nm1 / (n - 3.0) +
                                       sum * sum / 4.0 * std::pow(1.0 - r23, 3));
  if (!(denominator > 0.0)) throw DataError("Williams test: degenerate correlation triple");
  result.t = numerator / denominator;
  result.p_one_sided = StudentTUpperTail(result.t, result.df);
  return result;
}

std::vector<double> BhAdjust(std::span<const double> p_values) {
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw DataError("p-value outside [0, 1]");
  }
  const size_t m = p_values.size();
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return p_values[a] < p_values[b]; });

  std::vector<double> adjusted(m);
  double running_min = 1.0;
  for (size_t rank = m; rank >= 1; --rank) {
    const size_t idx = order[rank - 1];
    const double scaled = p_values[idx] * (static_cast<double>(m) / static_cast<double>(rank));
    running_min = std::min(running_min, scaled);
    adjusted[idx] = running_min;
  }
  return adjusted;
}

}  // namespace storyeval::stats
