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

#include "storyeval/study/explanation_study.h"

#include <algorithm>
#include <random>
#include <set>

#include "storyeval/csv.h"
#include "storyeval/error.h"
#include "storyeval/prompt/rating_extraction.h"

namespace storyeval::study {
namespace {

struct CategoryInfo {
  std::string_view column;
  std::string_view label;
};

constexpr std::array<CategoryInfo, 5> kCategoryInfo = {{
    {"poor_syntax", "Poor Syntax"},
    {"incoherence", "Incoherence"},
    {"wrong_guideline", "Wrong Guideline"},
    {"superfluous_text", "Superfluous Text"},
    {"unsubstantiated_claims", "Unsubstantiated Claims"},
}};

// (flagged, raters) per explanation, in explanation-id order.
std::vector<std::pair<int, int>> CountsByExplanation(
    std::span<const ExplanationJudgment> judgments, ErrorCategory category) {
  std::map<std::string, std::pair<int, int>> counts;
  for (const auto& j : judgments) {
    auto& c = counts[j.explanation_id];
    c.first += j.flag(category) ? 1 : 0;
    c.second += 1;
  }
  std::vector<std::pair<int, int>> out;
  out.reserve(counts.size());
  for (const auto& [_, c] : counts) out.push_back(c);
  return out;
}

}  // namespace

std::string_view CategoryColumn(ErrorCategory c) { return kCategoryInfo[static_cast<int>(c)].column; }
std::string_view CategoryLabel(ErrorCategory c) { return kCategoryInfo[static_cast<int>(c)].label; }

std::vector<ExplanationJudgment> ReadStudyCsv(std::istream& in) {
  const auto rows = csv::Read(in);
  std::vector<std::string> header = {"explanation_id", "rater_id"};
  for (auto c : kAllCategories) header.emplace_back(CategoryColumn(c));
  if (rows.empty() || rows[0].fields != header) throw DataError("study.csv: unexpected header");

  std::vector<ExplanationJudgment> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    const std::string where = "study.csv line " + std::to_string(rows[r].line) + ": ";
    if (f.size() != header.size()) throw DataError(where + "expected 7 fields");
    ExplanationJudgment j{f[0], f[1], {}};
    for (size_t c = 0; c < 5; ++c) {
      if (f[2 + c] != "0" && f[2 + c] != "1") throw DataError(where + "flags must be 0 or 1");
      j.flags[c] = f[2 + c] == "1";
    }
    if (!seen.insert({j.explanation_id, j.rater_id}).second) {
      throw DataError(where + "duplicate judgment by rater " + j.rater_id);
    }
    out.push_back(std::move(j));
  }
  return out;
}

ErrorRateReport ErrorRates(std::span<const ExplanationJudgment> judgments) {
  if (judgments.empty()) throw DataError("no judgments");
  ErrorRateReport report;
  for (auto category : kAllCategories) {
    int flagged = 0;
    for (const auto& j : judgments) flagged += j.flag(category) ? 1 : 0;
    report.rates[category] = static_cast<double>(flagged) / static_cast<double>(judgments.size());

    const auto counts = CountsByExplanation(judgments, category);
    int majority = 0;
    for (const auto& [yes, total] : counts) majority += 2 * yes > total ? 1 : 0;
    report.majority_rates[category] =
        static_cast<double>(majority) / static_cast<double>(counts.size());
  }
  std::map<std::string, int> raters;
  for (const auto& j : judgments) ++raters[j.explanation_id];
  for (const auto& [id, n] : raters) {
    if (n != kExpectedRaters) report.incomplete.emplace_back(id, n);
  }
  return report;
}

double Ac1FromCounts(std::span<const std::pair<int, int>> counts) {
  double agreement = 0.0;
  double prevalence = 0.0;
  int used = 0;
  for (const auto& [yes, total] : counts) {
    if (total < 2) continue;
    const double no = total - yes;
    agreement += (yes * (yes - 1.0) + no * (no - 1.0)) / (total * (total - 1.0));
    prevalence += static_cast<double>(yes) / total;
    ++used;
  }
  if (used == 0) throw DataError("AC1 needs explanations with at least 2 raters");
  const double pa = agreement / used;
  const double pi = prevalence / used;
  const double pe = 2.0 * pi * (1.0 - pi);
  return (pa - pe) / (1.0 - pe);
}

Ac1Result GwetAc1(std::span<const ExplanationJudgment> judgments, ErrorCategory category,
                  int resamples, uint64_t seed) {
  std::vector<std::pair<int, int>> counts;
  for (const auto& c : CountsByExplanation(judgments, category)) {
    if (c.second >= 2) counts.push_back(c);
  }
  if (counts.empty()) throw DataError("AC1 needs explanations with at least 2 raters");

  Ac1Result result;
  result.explanations = static_cast<int>(counts.size());
  double agreement = 0.0, prevalence = 0.0;
  for (const auto& [yes, total] : counts) {
    const double no = total - yes;
    agreement += (yes * (yes - 1.0) + no * (no - 1.0)) / (total * (total - 1.0));
    prevalence += static_cast<double>(yes) / total;
  }
  result.observed_agreement = agreement / counts.size();
  const double pi = prevalence / counts.size();
  result.chance_agreement = 2.0 * pi * (1.0 - pi);
  result.ac1 = Ac1FromCounts(counts);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, counts.size() - 1);
  std::vector<double> stats(static_cast<size_t>(resamples));
  std::vector<std::pair<int, int>> sample(counts.size());
  for (auto& s : stats) {
    for (auto& c : sample) c = counts[pick(rng)];
    s = Ac1FromCounts(sample);
  }
  std::sort(stats.begin(), stats.end());
  auto quantile = [&](double q) {
    const double pos = q * (stats.size() - 1);
    const auto lo = static_cast<size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, stats.size() - 1);
    return stats[lo] + (pos - lo) * (stats[hi] - stats[lo]);
  };
  result.ci95 = {quantile(0.025), quantile(0.975)};
  return result;
}

double NoExplanationRate(std::span<const prompt::LlmExchange> exchanges,
                         prompt::PromptVariant variant) {
  if (!prompt::RequestsExplanation(variant)) {
    throw DataError("Eval-Prompt 1 does not request explanations");
  }
  int ok = 0, missing = 0;
  for (const auto& e : exchanges) {
    if (e.variant != variant || e.status != prompt::ExchangeStatus::kOk) continue;
    ++ok;
    if (!prompt::HasExplanation(e.explanation.value_or(""))) ++missing;
  }
  if (ok == 0) throw DataError("no ok exchanges for the requested Eval-Prompt");
  return static_cast<double>(missing) / ok;
}

}  // namespace storyeval::study
