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

#include "storyeval/contamination/min_k_prob.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "json.hpp"
#include "storyeval/error.h"

namespace storyeval::contamination {

double MinKProb(std::span<const double> logprobs, double k_percent) {
  if (logprobs.empty()) throw DataError("Min-K% Prob of an empty sequence");
  if (!(k_percent > 0.0 && k_percent <= 100.0)) throw DataError("k_percent must be in (0, 100]");
  for (double lp : logprobs) {
    if (!std::isfinite(lp)) throw DataError("non-finite token log-probability");
  }
  const auto count = std::max<size_t>(
      1, static_cast<size_t>(std::floor(k_percent / 100.0 * static_cast<double>(logprobs.size()))));
  std::vector<double> sorted(logprobs.begin(), logprobs.end());
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(count),
                    sorted.end());
  // Ascending summation of the selected values keeps the result exact
  // regardless of the original token order.
  double sum = 0.0;
  for (size_t i = 0; i < count; ++i) sum += sorted[i];
  return sum / static_cast<double>(count);
}

double ContaminationRate(std::span<const double> scores, double threshold) {
  if (scores.empty()) throw DataError("contamination rate of an empty document set");
  if (!std::isfinite(threshold)) throw DataError("threshold must be finite");
  const auto seen = std::count_if(scores.begin(), scores.end(),
                                  [&](double s) { return s >= threshold; });
  return static_cast<double>(seen) / static_cast<double>(scores.size());
}

double RocAuc(std::span<const double> scores, std::span<const Membership> labels) {
  if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
  const auto members = static_cast<int64_t>(
      std::count(labels.begin(), labels.end(), Membership::kMember));
  const auto non_members = static_cast<int64_t>(labels.size()) - members;
  if (members == 0 || non_members == 0) throw DataError("AUC needs both members and non-members");

  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return scores[a] < scores[b]; });

  if (scores.size() <= kExactAucLimit) {
    // Walk tie groups in ascending order; twice the win count keeps ties exact.
    int64_t twice_wins = 0;
    int64_t non_members_below = 0;
    size_t i = 0;
    while (i < order.size()) {
      size_t j = i;
      int64_t group_members = 0, group_non_members = 0;
      while (j < order.size() && scores[order[j]] == scores[order[i]]) {
        (labels[order[j]] == Membership::kMember ? group_members : group_non_members)++;
        ++j;
      }
      twice_wins += group_members * (2 * non_members_below + group_non_members);
      non_members_below += group_non_members;
      i = j;
    }
    return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(members) *
                                              static_cast<double>(non_members));
  }

  // Mann-Whitney U from average ranks.
  double member_rank_sum = 0.0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t k = i; k < j; ++k) {
      if (labels[order[k]] == Membership::kMember) member_rank_sum += rank;
    }
    i = j;
  }
  const double m = static_cast<double>(members);
  const double u = member_rank_sum - m * (m + 1.0) / 2.0;
  return u / (m * static_cast<double>(non_members));
}

double CalibrateThreshold(std::span<const double> scores, std::span<const Membership> labels,
                          double target_fpr) {
  if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
  if (!(target_fpr >= 0.0 && target_fpr <= 1.0)) throw DataError("target FPR outside [0, 1]");
  std::vector<double> negatives;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == Membership::kNonMember) negatives.push_back(scores[i]);
  }
  if (negatives.empty()) throw DataError("threshold calibration needs non-members");
  std::sort(negatives.begin(), negatives.end(), std::greater<>());
  const auto allowed = static_cast<size_t>(std::floor(target_fpr * negatives.size()));
  // Above every negative when no false positive is allowed.
  if (allowed == 0) return std::nextafter(negatives.front(), INFINITY);
  // Threshold just above the first negative that must be excluded; ties in
  // that group are all excluded.
  if (allowed >= negatives.size()) return negatives.back();
  double candidate = negatives[allowed - 1];
  if (negatives[allowed] == candidate) return std::nextafter(candidate, INFINITY);
  return candidate;
}

std::vector<TokenLogProbSequence> ReadLogProbsJsonl(std::istream& in) {
  std::vector<TokenLogProbSequence> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TokenLogProbSequence seq;
      seq.doc_id = j.at("doc_id").is_string() ? j["doc_id"].get<std::string>()
                                              : j["doc_id"].dump();
      if (j.contains("label") && !j["label"].is_null()) {
        const auto& l = j["label"];
        const auto s = l.is_string() ? l.get<std::string>() : l.dump();
        if (s == "member") {
          seq.label = Membership::kMember;
        } else if (s == "non-member" || s == "nonmember") {
          seq.label = Membership::kNonMember;
        } else {
          throw DataError("label must be \"member\" or \"non-member\", got " + s);
        }
      }
      seq.logprobs = j.at("logprobs").get<std::vector<double>>();
      if (seq.logprobs.empty()) throw DataError("empty logprobs");
      for (double lp : seq.logprobs) {
        if (!(lp <= 0.0)) throw DataError("log-likelihoods must be <= 0");
      }
      out.push_back(std::move(seq));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("logprobs.jsonl line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("logprobs.jsonl line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace storyeval::contamination
