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

#ifndef STORYEVAL_STUDY_EXPLANATION_STUDY_H_
#define STORYEVAL_STUDY_EXPLANATION_STUDY_H_

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "storyeval/prompt/eval_prompt.h"
#include "storyeval/prompt/exchange.h"

namespace storyeval::study {

enum class ErrorCategory {
  kPoorSyntax,
  kIncoherence,
  kWrongGuideline,
  kSuperfluousText,
  kUnsubstantiatedClaims,
};

inline constexpr std::array<ErrorCategory, 5> kAllCategories = {
    ErrorCategory::kPoorSyntax, ErrorCategory::kIncoherence, ErrorCategory::kWrongGuideline,
    ErrorCategory::kSuperfluousText, ErrorCategory::kUnsubstantiatedClaims};

// Column name in study.csv ("poor_syntax", ...).
std::string_view CategoryColumn(ErrorCategory c);
// Display name ("Poor Syntax", ...).
std::string_view CategoryLabel(ErrorCategory c);

// One rater's binary error flags for one explanation.
struct ExplanationJudgment {
  std::string explanation_id;
  std::string rater_id;
  std::array<bool, 5> flags{};  // indexed by ErrorCategory

  bool flag(ErrorCategory c) const { return flags[static_cast<size_t>(c)]; }
};

// study.csv: explanation_id,rater_id,poor_syntax,incoherence,wrong_guideline,
// superfluous_text,unsubstantiated_claims with 0/1 cells. Throws DataError.
std::vector<ExplanationJudgment> ReadStudyCsv(std::istream& in);

struct ErrorRateReport {
  // Mean flag over all (explanation, rater) judgments.
  std::map<ErrorCategory, double> rates;
  // Diagnostic: fraction of explanations flagged by a strict majority.
  std::map<ErrorCategory, double> majority_rates;
  // Explanations whose rater count differs from the expected 3.
  std::vector<std::pair<std::string, int>> incomplete;
};

inline constexpr int kExpectedRaters = 3;

// Throws DataError on empty input.
ErrorRateReport ErrorRates(std::span<const ExplanationJudgment> judgments);

struct Ac1Result {
  double ac1 = 0.0;
  std::pair<double, double> ci95;
  double observed_agreement = 0.0;  // p_a
  double chance_agreement = 0.0;    // p_e = 2 pi (1 - pi)
  int explanations = 0;             // explanations with >= 2 raters
};

inline constexpr int kBootstrapResamples = 10000;
inline constexpr uint64_t kBootstrapSeed = 20240101;

// Gwet's AC1 for binary labels with multiple raters per explanation: p_a is
// the average pairwise agreement, pi the mean per-explanation prevalence.
// The interval is a percentile bootstrap over explanations. Throws DataError
// when no explanation has 2 or more raters.
Ac1Result GwetAc1(std::span<const ExplanationJudgment> judgments, ErrorCategory category,
                  int resamples = kBootstrapResamples, uint64_t seed = kBootstrapSeed);

// Point estimate from per-explanation (raters flagging, raters total) counts.
double Ac1FromCounts(std::span<const std::pair<int, int>> counts);

// Fraction of ok exchanges of `variant` whose explanation falls under the
// presence threshold. Throws DataError for Eval-Prompt 1, which never asks
// for one, or when there is no ok exchange of the variant.
double NoExplanationRate(std::span<const prompt::LlmExchange> exchanges,
                         prompt::PromptVariant variant);

}  // namespace storyeval::study

#endif  // STORYEVAL_STUDY_EXPLANATION_STUDY_H_
