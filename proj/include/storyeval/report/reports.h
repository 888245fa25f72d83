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

#ifndef STORYEVAL_REPORT_REPORTS_H_
#define STORYEVAL_REPORT_REPORTS_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "storyeval/dataset.h"
#include "storyeval/report/report_table.h"
#include "storyeval/stats/meta_evaluation.h"
#include "storyeval/study/explanation_study.h"

namespace storyeval::report {

// Systems x (criteria + Average): mean of the per-story scores (tries
// averaged) with a 95% t-interval. The Average column pools every
// (story, criterion) cell of the system. The "Human" system row comes first.
// Cells with fewer than 2 stories are missing. Throws DataError if the
// measure is absent.
ReportTable ReportMeanRatings(const RatingTensor& tensor, std::string_view measure_id,
                              const std::vector<Criterion>& criteria = {kAllCriteria.begin(),
                                                                        kAllCriteria.end()});

// Criteria x measures: |K(target, measure)| x 100 at the given level, the
// target being the averaged human rating. Undefined correlations are
// missing. With `human_baseline`, a "Human" column holds the rater-vs-mean
// upper bound.
ReportTable ReportCorrelationHeatmap(const RatingTensor& tensor,
                                     const std::vector<std::string>& measures, stats::Level level,
                                     stats::CoefficientKind kind, bool human_baseline = false);

// Criteria x measures ICC2k across tries (raters for "human"); the interval
// is shown as half the F-bound width.
ReportTable ReportIcc(const RatingTensor& tensor, const std::vector<std::string>& measures,
                      const std::vector<Criterion>& criteria = {kAllCriteria.begin(),
                                                                kAllCriteria.end()});

// BH-adjusted p-values x 100; missing tests stay empty.
ReportTable ReportWilliams(const stats::WilliamsMatrixResult& result, std::string_view reference,
                           stats::Level level);

// Error categories x (Rate, Majority rate, AC1, AC1 low, AC1 high).
ReportTable ReportStudy(const study::ErrorRateReport& rates,
                        const std::map<study::ErrorCategory, study::Ac1Result>& ac1);

}  // namespace storyeval::report

#endif  // STORYEVAL_REPORT_REPORTS_H_
