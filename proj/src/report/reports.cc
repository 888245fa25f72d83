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

#include "storyeval/report/reports.h"

#include <set>

#include "storyeval/aggregate.h"
#include "storyeval/error.h"
#include "storyeval/stats/reliability.h"

namespace storyeval::report {

ReportTable ReportMeanRatings(const RatingTensor& tensor, std::string_view measure_id,
                              const std::vector<Criterion>& criteria) {
  if (!tensor.HasMeasure(measure_id)) {
    throw DataError("measure " + std::string(measure_id) + " not in tensor");
  }
  std::map<Criterion, CellScores> per_criterion;
  std::set<std::string> systems;
  for (Criterion c : criteria) {
    per_criterion[c] = Aggregate(tensor, measure_id, c);
    for (const auto& [key, _] : per_criterion[c]) systems.insert(key.system_id);
  }
  std::vector<std::string> rows;
  if (systems.count(std::string(kHumanSystemId))) rows.emplace_back(kHumanSystemId);
  for (const auto& s : systems) {
    if (s != kHumanSystemId) rows.push_back(s);
  }
  std::vector<std::string> columns;
  for (Criterion c : criteria) columns.emplace_back(CriterionCode(c));
  columns.emplace_back("Average");

  ReportTable table("Average " + std::string(measure_id) + " ratings with 95% confidence interval",
                    rows, columns);
  for (size_t r = 0; r < rows.size(); ++r) {
    std::vector<double> pooled;
    for (size_t c = 0; c < criteria.size(); ++c) {
      std::vector<double> samples;
      for (const auto& [key, score] : per_criterion[criteria[c]]) {
        if (key.system_id == rows[r]) samples.push_back(score);
      }
      pooled.insert(pooled.end(), samples.begin(), samples.end());
      if (samples.size() >= 2) {
        const auto ci = stats::Ci95Mean(samples);
        table.cells[r][c] = ReportCell{ci.mean, ci.half_width};
      }
    }
    if (pooled.size() >= 2) {
      const auto ci = stats::Ci95Mean(pooled);
      table.cells[r][criteria.size()] = ReportCell{ci.mean, ci.half_width};
    }
  }
  table.ComputeBold();
  return table;
}

ReportTable ReportCorrelationHeatmap(const RatingTensor& tensor,
                                     const std::vector<std::string>& measures, stats::Level level,
                                     stats::CoefficientKind kind, bool human_baseline) {
  if (measures.empty() && !human_baseline) throw DataError("heatmap needs at least one measure");
  std::vector<std::string> rows;
  for (Criterion c : kAllCriteria) rows.emplace_back(CriterionCode(c));
  std::vector<std::string> columns;
  if (human_baseline) columns.emplace_back("Human");
  columns.insert(columns.end(), measures.begin(), measures.end());

  ReportTable table(std::string(level == stats::Level::kOverall ? "Overall" : "System-level") +
                        " absolute " + std::string(stats::CoefficientName(kind)) +
                        " correlations (x100) with averaged human ratings",
                    rows, columns);
  for (size_t r = 0; r < kAllCriteria.size(); ++r) {
    const Criterion c = kAllCriteria[r];
    size_t col = 0;
    if (human_baseline) {
      try {
        const auto res = stats::HumanBaselineCorrelation(tensor, c, kind, level);
        table.cells[r][col] = ReportCell{100.0 * res.abs_value, std::nullopt};
      } catch (const DataError&) {
      }
      ++col;
    }
    for (const auto& m : measures) {
      try {
        const auto res =
            stats::Correlation(tensor, level, kHumanMeasureId, m, c,
                               stats::EffectiveCriterion(tensor, m, c), kind);
        table.cells[r][col] = ReportCell{100.0 * res.abs_value, std::nullopt};
      } catch (const DataError&) {
      }
      ++col;
    }
  }
  table.ComputeBold();
  return table;
}

ReportTable ReportIcc(const RatingTensor& tensor, const std::vector<std::string>& measures,
                      const std::vector<Criterion>& criteria) {
  std::vector<std::string> rows;
  for (Criterion c : criteria) rows.emplace_back(CriterionCode(c));
  ReportTable table("ICC2k with 95% confidence interval", rows, measures);
  for (size_t r = 0; r < criteria.size(); ++r) {
    for (size_t m = 0; m < measures.size(); ++m) {
      try {
        const auto tm = stats::BuildTryMatrix(
            tensor, measures[m], stats::EffectiveCriterion(tensor, measures[m], criteria[r]));
        const auto icc = stats::Icc2k(tm.matrix);
        table.cells[r][m] = ReportCell{icc.icc, 0.5 * (icc.ci95.second - icc.ci95.first)};
      } catch (const DataError&) {
      }
    }
  }
  table.ComputeBold();
  return table;
}

ReportTable ReportWilliams(const stats::WilliamsMatrixResult& result, std::string_view reference,
                           stats::Level level) {
  std::vector<std::string> rows;
  for (Criterion c : result.criteria) rows.emplace_back(CriterionCode(c));
  ReportTable table("BH-adjusted p-values (x100) of Williams tests, " + std::string(reference) +
                        " vs competitors, " + std::string(stats::LevelName(level)) + " level",
                    rows, result.competitors);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < result.competitors.size(); ++c) {
      if (const auto& cell = result.cells[r][c]) {
        table.cells[r][c] = ReportCell{100.0 * cell->p_adjusted, std::nullopt};
      }
    }
  }
  return table;
}

ReportTable ReportStudy(const study::ErrorRateReport& rates,
                        const std::map<study::ErrorCategory, study::Ac1Result>& ac1) {
  std::vector<std::string> rows;
  for (auto c : study::kAllCategories) rows.emplace_back(study::CategoryLabel(c));
  ReportTable table("Explanation error rates and Gwet's AC1", rows,
                    {"Rate", "Majority rate", "AC1", "AC1 low", "AC1 high"});
  for (size_t r = 0; r < study::kAllCategories.size(); ++r) {
    const auto c = study::kAllCategories[r];
    table.cells[r][0] = ReportCell{rates.rates.at(c), std::nullopt};
    table.cells[r][1] = ReportCell{rates.majority_rates.at(c), std::nullopt};
    if (auto it = ac1.find(c); it != ac1.end()) {
      table.cells[r][2] = ReportCell{it->second.ac1, std::nullopt};
      table.cells[r][3] = ReportCell{it->second.ci95.first, std::nullopt};
      table.cells[r][4] = ReportCell{it->second.ci95.second, std::nullopt};
    }
  }
  return table;
}

}  // namespace storyeval::report
