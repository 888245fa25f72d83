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

#ifndef STORYEVAL_STATS_META_EVALUATION_H_
#define STORYEVAL_STATS_META_EVALUATION_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storyeval/aggregate.h"
#include "storyeval/dataset.h"
#include "storyeval/stats/correlation.h"
#include "storyeval/stats/reliability.h"
#include "storyeval/stats/significance.h"

namespace storyeval::stats {

enum class Level { kOverall, kSystem };

std::string_view LevelName(Level level);
std::optional<Level> ParseLevel(std::string_view name);

// What to do with systems covered by only one of the two measures in a
// system-level correlation.
enum class MissingPolicy {
  kPairwise,  // drop them
  kStrict,    // throw DataError
};

// Criterion-less measures ignore the requested criterion.
std::optional<Criterion> EffectiveCriterion(const RatingTensor& tensor,
                                            std::string_view measure_id,
                                            std::optional<Criterion> criterion);

// Two cell maps restricted to their common keys, in key order.
struct PairedScores {
  std::vector<StoryKey> keys;
  std::vector<double> a;
  std::vector<double> b;
};
PairedScores JoinCells(const CellScores& a, const CellScores& b);

// Mean score per system over the given cells.
std::map<std::string, double> SystemMeans(const std::vector<StoryKey>& keys,
                                          const std::vector<double>& scores);

// Correlation of the flattened per-story vectors over all (story, system)
// cells both measures scored. Throws DataError if fewer than 2 cells overlap.
CorrelationResult OverallCorrelation(const RatingTensor& tensor, std::string_view measure_a,
                                     std::string_view measure_b,
                                     std::optional<Criterion> criterion_a,
                                     std::optional<Criterion> criterion_b, CoefficientKind kind);

// Correlation of per-system mean scores, computed over the cells both
// measures scored. Throws DataError if fewer than 2 systems remain.
CorrelationResult SystemLevelCorrelation(const RatingTensor& tensor, std::string_view measure_a,
                                         std::string_view measure_b,
                                         std::optional<Criterion> criterion_a,
                                         std::optional<Criterion> criterion_b,
                                         CoefficientKind kind,
                                         MissingPolicy policy = MissingPolicy::kPairwise);

CorrelationResult Correlation(const RatingTensor& tensor, Level level, std::string_view measure_a,
                              std::string_view measure_b, std::optional<Criterion> criterion_a,
                              std::optional<Criterion> criterion_b, CoefficientKind kind);

// Average over human raters of corr(rater k, all-rater mean). The rater is
// part of the mean, so this is an upper bound rather than an independent
// baseline. Throws DataError with fewer than 2 raters.
CorrelationResult HumanBaselineCorrelation(const RatingTensor& tensor, Criterion criterion,
                                           CoefficientKind kind, Level level = Level::kOverall);

// (1/R) sum_k mean_cells |m - h_k|. Diagnostic only: Likert central tendency
// makes it a poor comparison measure.
double MeanL1Distance(const RatingTensor& tensor, std::string_view measure, Criterion criterion);

// Items x tries matrix of one measure; cells missing any try are dropped.
struct TryMatrix {
  RaterMatrix matrix{0, 0};
  std::vector<StoryKey> items;
  std::vector<int> tries;
  int dropped_incomplete = 0;
};
TryMatrix BuildTryMatrix(const RatingTensor& tensor, std::string_view measure_id,
                         std::optional<Criterion> criterion);

struct WilliamsCell {
  WilliamsResult test;
  double p_adjusted = 1.0;
  int n = 0;
};

struct WilliamsMatrixResult {
  std::vector<Criterion> criteria;         // rows
  std::vector<std::string> competitors;    // columns
  // [row][column]; nullopt where a correlation or the test was undefined.
  std::vector<std::vector<std::optional<WilliamsCell>>> cells;
};

// For each criterion and competitor: r12 = K(human, reference),
// r13 = K(human, competitor), r23 = K(reference, competitor) over the cells
// all three share. All p-values form one BH family.
WilliamsMatrixResult WilliamsMatrix(const RatingTensor& tensor, std::string_view reference,
                                    const std::vector<std::string>& competitors,
                                    const std::vector<Criterion>& criteria, Level level,
                                    CoefficientKind kind);

}  // namespace storyeval::stats

#endif  // STORYEVAL_STATS_META_EVALUATION_H_
