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

#ifndef STORYEVAL_STATS_CORRELATION_H_
#define STORYEVAL_STATS_CORRELATION_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace storyeval::stats {

// Kendall is always tau-b (tie-corrected).
enum class CoefficientKind { kPearson, kSpearman, kKendall };

std::string_view CoefficientName(CoefficientKind kind);
std::optional<CoefficientKind> ParseCoefficientKind(std::string_view name);

struct CorrelationResult {
  CoefficientKind kind = CoefficientKind::kKendall;
  double value = 0.0;      // In [-1, 1].
  double abs_value = 0.0;  // |value|.
  int n = 0;
};

// Throws DataError on length mismatch, fewer than 2 points or non-finite
// entries, and UndefinedCorrelationError when either input is constant.
CorrelationResult Correlate(std::span<const double> x, std::span<const double> y,
                            CoefficientKind kind);

double Pearson(std::span<const double> x, std::span<const double> y);
double Spearman(std::span<const double> x, std::span<const double> y);
// O(n log n) tau-b: merge-sort inversion counting with tie terms.
double KendallTauB(std::span<const double> x, std::span<const double> y);

// 1-based ranks, ties receive the average of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

}  // namespace storyeval::stats

#endif  // STORYEVAL_STATS_CORRELATION_H_
