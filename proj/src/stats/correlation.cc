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

#include "storyeval/stats/correlation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "storyeval/error.h"

namespace storyeval::stats {
namespace {

void CheckInputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DataError("correlation inputs differ in length (" + std::to_string(x.size()) + " vs " +
                    std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw DataError("correlation needs at least 2 points");
  for (size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw DataError("correlation input contains a non-finite value");
    }
  }
}

// Sum over runs of equal adjacent values of t*(t-1)/2.
template <typename It, typename Eq>
int64_t TiedPairs(It first, It last, Eq eq) {
  int64_t total = 0;
  while (first != last) {
    It run_end = std::next(first);
    while (run_end != last && eq(*first, *run_end)) ++run_end;
    const auto t = static_cast<int64_t>(std::distance(first, run_end));
    total += t * (t - 1) / 2;
    first = run_end;
  }
  return total;
}

// Sorts `v` and returns the number of inversions (pairs i<j with v[i]>v[j]).
int64_t SortCountingInversions(std::vector<double>& v) {
  std::vector<double> buffer(v.size());
  int64_t inversions = 0;
  for (size_t width = 1; width < v.size(); width *= 2) {
    for (size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const size_t mid = std::min(lo + width, v.size());
      const size_t hi = std::min(lo + 2 * width, v.size());
      size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          inversions += static_cast<int64_t>(mid - i);
          buffer[k++] = v[j++];
        } else {
          buffer[k++] = v[i++];
        }
      }
      while (i < mid) buffer[k++] = v[i++];
      while (j < hi) buffer[k++] = v[j++];
    }
    v.swap(buffer);
  }
  return inversions;
}

double Clamp(double r) { return std::clamp(r, -1.0, 1.0); }

}  // namespace

std::string_view CoefficientName(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::kPearson:
      return "pearson";
    case CoefficientKind::kSpearman:
      return "spearman";
    case CoefficientKind::kKendall:
      return "kendall";
  }
  return "unknown";
}

std::optional<CoefficientKind> ParseCoefficientKind(std::string_view name) {
  for (auto kind : {CoefficientKind::kPearson, CoefficientKind::kSpearman,
                    CoefficientKind::kKendall}) {
    if (name == CoefficientName(kind)) return kind;
  }
  return std::nullopt;
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Ranks i+1..j averaged.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  CheckInputs(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelationError("correlation undefined: constant input");
  }
  return Clamp(sxy / std::sqrt(sxx * syy));
}

double Spearman(std::span<const double> x, std::span<const double> y) {
  CheckInputs(x, y);
  const auto rx = AverageRanks(x);
  const auto ry = AverageRanks(y);
  return Pearson(rx, ry);
}

double KendallTauB(std::span<const double> x, std::span<const double> y) {
  CheckInputs(x, y);
  const size_t n = x.size();
  std::vector<std::pair<double, double>> pairs(n);
  for (size_t i = 0; i < n; ++i) pairs[i] = {x[i], y[i]};
  std::sort(pairs.begin(), pairs.end());

  const auto total = static_cast<int64_t>(n) * static_cast<int64_t>(n - 1) / 2;
  const int64_t x_ties =
      TiedPairs(pairs.begin(), pairs.end(), [](auto& a, auto& b) { return a.first == b.first; });
  const int64_t joint_ties = TiedPairs(pairs.begin(), pairs.end(), [](auto& a, auto& b) {
    return a.first == b.first && a.second == b.second;
  });

  // With pairs sorted by (x, y), every inversion in the y sequence is a
  // discordant pair.
  std::vector<double> ys(n);
  for (size_t i = 0; i < n; ++i) ys[i] = pairs[i].second;
  const int64_t discordant = SortCountingInversions(ys);
  const int64_t y_ties = TiedPairs(ys.begin(), ys.end(), std::equal_to<>());

  const int64_t concordant_minus_discordant =
      total - x_ties - y_ties + joint_ties - 2 * discordant;
  const int64_t denom_x = total - x_ties;
  const int64_t denom_y = total - y_ties;
  if (denom_x == 0 || denom_y == 0) {
    throw UndefinedCorrelationError("Kendall tau-b undefined: constant input");
  }
  return Clamp(static_cast<double>(concordant_minus_discordant) /
               std::sqrt(static_cast<double>(denom_x) * static_cast<double>(denom_y)));
}

CorrelationResult Correlate(std::span<const double> x, std::span<const double> y,
                            CoefficientKind kind) {
  double value = 0.0;
  switch (kind) {
    case CoefficientKind::kPearson:
      value = Pearson(x, y);
      break;
    case CoefficientKind::kSpearman:
      value = Spearman(x, y);
      break;
    case CoefficientKind::kKendall:
      value = KendallTauB(x, y);
      break;
  }
  return {kind, value, std::abs(value), static_cast<int>(x.size())};
}

}  // namespace storyeval::stats
