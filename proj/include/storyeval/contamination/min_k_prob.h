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

#ifndef STORYEVAL_CONTAMINATION_MIN_K_PROB_H_
#define STORYEVAL_CONTAMINATION_MIN_K_PROB_H_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace storyeval::contamination {

enum class Membership { kMember, kNonMember };

// Per-token natural-log likelihoods of one document.
struct TokenLogProbSequence {
  std::string doc_id;
  std::optional<Membership> label;
  std::vector<double> logprobs;
};

// Mean log-likelihood of the max(1, floor(k% * T)) least likely tokens.
// Throws DataError on an empty sequence, non-finite entries, or k outside
// (0, 100].
double MinKProb(std::span<const double> logprobs, double k_percent = 20.0);

// Fraction of documents whose score is >= threshold (classified as seen in
// pretraining). Throws DataError on empty input.
double ContaminationRate(std::span<const double> scores, double threshold);

// P(member score > non-member score) + 0.5 P(tie). Exact integer pair
// counting up to kExactAucLimit documents, rank sums above. Throws
// DataError unless both classes are present.
inline constexpr size_t kExactAucLimit = 10000;
double RocAuc(std::span<const double> scores, std::span<const Membership> labels);

// Smallest threshold such that at most `target_fpr` of non-members score
// at or above it. Throws DataError without non-members.
double CalibrateThreshold(std::span<const double> scores, std::span<const Membership> labels,
                          double target_fpr);

// logprobs.jsonl: {"doc_id": ..., "label"?: "member"|"non-member", "logprobs": [...]}
// Labels are spelled out because 0/1 conventions differ between corpora.
// Throws DataError with the line number on malformed input.
std::vector<TokenLogProbSequence> ReadLogProbsJsonl(std::istream& in);

}  // namespace storyeval::contamination

#endif  // STORYEVAL_CONTAMINATION_MIN_K_PROB_H_
