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

#include "storyeval/stats/meta_evaluation.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "storyeval/error.h"

namespace storyeval::stats {
namespace {

std::vector<double> Values(const std::map<std::string, double>& m) {
  std::vector<double> out;
  out.reserve(m.size());
  for (const auto& [_, v] : m) out.push_back(v);
  return out;
}

// Per-system means of both sides over their common cells, restricted to
// systems present on both sides.
std::pair<std::vector<double>, std::vector<double>> SystemVectors(const PairedScores& paired) {
  auto ma = SystemMeans(paired.keys, paired.a);
  auto mb = SystemMeans(paired.keys, paired.b);
  return {Values(ma), Values(mb)};
}

std::set<std::string> Systems(const CellScores& cells) {
  std::set<std::string> out;
  for (const auto& [key, _] : cells) out.insert(key.system_id);
  return out;
}

CorrelationResult CorrelatePaired(const PairedScores& paired, Level level, CoefficientKind kind) {
  if (level == Level::kOverall) {
    if (paired.keys.size() < 2) {
      throw DataError("insufficient overlap: " + std::to_string(paired.keys.size()) +
                      " common cells");
    }
    return Correlate(paired.a, paired.b, kind);
  }
  auto [a, b] = SystemVectors(paired);
  if (a.size() < 2) {
    throw DataError("system-level correlation needs at least 2 systems, got " +
                    std::to_string(a.size()));
  }
  return Correlate(a, b, kind);
}

}  // namespace

std::string_view LevelName(Level level) {
  return level == Level::kOverall ? "overall" : "system";
}

std::optional<Level> ParseLevel(std::string_view name) {
  if (name == "overall") return Level::kOverall;
  if (name == "system") return Level::kSystem;
  return std::nullopt;
}

std::optional<Criterion> EffectiveCriterion(const RatingTensor& tensor,
                                            std::string_view measure_id,
                                            std::optional<Criterion> criterion) {
  return tensor.IsCriterionless(measure_id) ? std::nullopt : criterion;
}

PairedScores JoinCells(const CellScores& a, const CellScores& b) {
  PairedScores out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      out.keys.push_back(ia->first);
      out.a.push_back(ia->second);
      out.b.push_back(ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::map<std::string, double> SystemMeans(const std::vector<StoryKey>& keys,
                                          const std::vector<double>& scores) {
  std::map<std::string, std::vector<double>> grouped;
  for (size_t i = 0; i < keys.size(); ++i) grouped[keys[i].system_id].push_back(scores[i]);
  std::map<std::string, double> out;
  for (auto& [system, values] : grouped) {
    // Sorted summation keeps the mean independent of story order.
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    out.emplace(system, sum / static_cast<double>(values.size()));
  }
  return out;
}

CorrelationResult OverallCorrelation(const RatingTensor& tensor, std::string_view measure_a,
                                     std::string_view measure_b,
                                     std::optional<Criterion> criterion_a,
                                     std::optional<Criterion> criterion_b, CoefficientKind kind) {
  const auto a = Aggregate(tensor, measure_a, criterion_a);
  const auto b = Aggregate(tensor, measure_b, criterion_b);
  return CorrelatePaired(JoinCells(a, b), Level::kOverall, kind);
}

CorrelationResult SystemLevelCorrelation(const RatingTensor& tensor, std::string_view measure_a,
                                         std::string_view measure_b,
                                         std::optional<Criterion> criterion_a,
                                         std::optional<Criterion> criterion_b,
                                         CoefficientKind kind, MissingPolicy policy) {
  const auto a = Aggregate(tensor, measure_a, criterion_a);
  const auto b = Aggregate(tensor, measure_b, criterion_b);
  const auto paired = JoinCells(a, b);
  if (policy == MissingPolicy::kStrict) {
    std::set<std::string> common;
    for (const auto& key : paired.keys) common.insert(key.system_id);
    for (const auto& systems : {Systems(a), Systems(b)}) {
      for (const auto& s : systems) {
        if (common.count(s) == 0) {
          throw DataError("system " + s + " has no story scored by both measures");
        }
      }
    }
  }
  return CorrelatePaired(paired, Level::kSystem, kind);
}

CorrelationResult Correlation(const RatingTensor& tensor, Level level, std::string_view measure_a,
                              std::string_view measure_b, std::optional<Criterion> criterion_a,
                              std::optional<Criterion> criterion_b, CoefficientKind kind) {
  return level == Level::kOverall
             ? OverallCorrelation(tensor, measure_a, measure_b, criterion_a, criterion_b, kind)
             : SystemLevelCorrelation(tensor, measure_a, measure_b, criterion_a, criterion_b,
                                      kind);
}

CorrelationResult HumanBaselineCorrelation(const RatingTensor& tensor, Criterion criterion,
                                           CoefficientKind kind, Level level) {
  const auto raters = tensor.TryIndices(kHumanMeasureId);
  if (raters.size() < 2) throw DataError("human baseline needs at least 2 raters");
  const auto mean = Aggregate(tensor, kHumanMeasureId, criterion);
  double total = 0.0;
  int n = 0;
  for (int rater : raters) {
    const auto single = ScoresForTry(tensor, kHumanMeasureId, criterion, rater);
    const auto result = CorrelatePaired(JoinCells(single, mean), level, kind);
    total += result.value;
    n = std::max(n, result.n);
  }
  const double value = total / static_cast<double>(raters.size());
  return {kind, value, std::abs(value), n};
}

double MeanL1Distance(const RatingTensor& tensor, std::string_view measure, Criterion criterion) {
  const auto scores = Aggregate(tensor, measure, EffectiveCriterion(tensor, measure, criterion));
  const auto raters = tensor.TryIndices(kHumanMeasureId);
  double total = 0.0;
  int used = 0;
  for (int rater : raters) {
    const auto paired = JoinCells(scores, ScoresForTry(tensor, kHumanMeasureId, criterion, rater));
    if (paired.keys.empty()) continue;
    double l1 = 0.0;
    for (size_t i = 0; i < paired.a.size(); ++i) l1 += std::abs(paired.a[i] - paired.b[i]);
    total += l1 / static_cast<double>(paired.a.size());
    ++used;
  }
  if (used == 0) throw DataError("no story shared by " + std::string(measure) + " and human raters");
  return total / used;
}

TryMatrix BuildTryMatrix(const RatingTensor& tensor, std::string_view measure_id,
                         std::optional<Criterion> criterion) {
  TryMatrix out;
  out.tries = tensor.TryIndices(measure_id);
  std::map<StoryKey, std::map<int, double>> cells;
  for (const RatingRecord* r :
       tensor.Select({.measure_id = std::string(measure_id), .criterion = criterion})) {
    cells[r->story_key()][r->try_index] = r->score;
  }
  std::vector<double> values;
  for (const auto& [key, by_try] : cells) {
    if (by_try.size() != out.tries.size()) {
      ++out.dropped_incomplete;
      continue;
    }
    out.items.push_back(key);
    for (const auto& [_, v] : by_try) values.push_back(v);
  }
  out.matrix = RaterMatrix(static_cast<int>(out.items.size()), static_cast<int>(out.tries.size()),
                           std::move(values));
  return out;
}

WilliamsMatrixResult WilliamsMatrix(const RatingTensor& tensor, std::string_view reference,
                                    const std::vector<std::string>& competitors,
                                    const std::vector<Criterion>& criteria, Level level,
                                    CoefficientKind kind) {
  WilliamsMatrixResult out;
  out.criteria = criteria;
  out.competitors = competitors;
  out.cells.assign(criteria.size(),
                   std::vector<std::optional<WilliamsCell>>(competitors.size()));

  for (size_t row = 0; row < criteria.size(); ++row) {
    const Criterion c = criteria[row];
    const auto human = Aggregate(tensor, kHumanMeasureId, c);
    const auto ref = Aggregate(tensor, reference, EffectiveCriterion(tensor, reference, c));
    for (size_t col = 0; col < competitors.size(); ++col) {
      const auto& name = competitors[col];
      const auto comp = Aggregate(tensor, name, EffectiveCriterion(tensor, name, c));
      // Restrict all three to their common cells.
      CellScores human_common, ref_common, comp_common;
      for (const auto& [key, h] : human) {
        auto r = ref.find(key);
        auto m = comp.find(key);
        if (r == ref.end() || m == comp.end()) continue;
        human_common.emplace(key, h);
        ref_common.emplace(key, r->second);
        comp_common.emplace(key, m->second);
      }
      try {
        const auto r12 = CorrelatePaired(JoinCells(human_common, ref_common), level, kind);
        const auto r13 = CorrelatePaired(JoinCells(human_common, comp_common), level, kind);
        const auto r23 = CorrelatePaired(JoinCells(ref_common, comp_common), level, kind);
        WilliamsCell cell;
        cell.n = r12.n;
        cell.test = WilliamsTest(r12.value, r13.value, r23.value, r12.n);
        out.cells[row][col] = cell;
      } catch (const DataError&) {
        // Left missing.
      }
    }
  }

  std::vector<double> family;
  for (const auto& row : out.cells) {
    for (const auto& cell : row) {
      if (cell) family.push_back(cell->test.p_one_sided);
    }
  }
  const auto adjusted = BhAdjust(family);
  size_t next = 0;
  for (auto& row : out.cells) {
    for (auto& cell : row) {
      if (cell) cell->p_adjusted = adjusted[next++];
    }
  }
  return out;
}

}  // namespace storyeval::stats
