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

#ifndef STORYEVAL_DATASET_H_
#define STORYEVAL_DATASET_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "storyeval/criterion.h"

namespace storyeval {

// Measure id of the averaged human annotation; the rater index is stored on
// the try axis.
inline constexpr std::string_view kHumanMeasureId = "human";
// System id of the human-written reference stories.
inline constexpr std::string_view kHumanSystemId = "Human";

// Identifies one story: story-prompt i and system j.
struct StoryKey {
  std::string story_prompt_id;
  std::string system_id;

  auto operator<=>(const StoryKey&) const = default;
};

struct Story {
  std::string story_prompt_id;
  std::string system_id;
  std::string story_prompt_text;
  std::string text;

  StoryKey key() const { return {story_prompt_id, system_id}; }
};

enum class MeasureKind {
  kHuman,      // Likert 1-5, reals allowed.
  kLlm,        // Likert 1-5, integers only.
  kAutomatic,  // Ingested score, unbounded real.
};

// "human" -> kHuman, "<model>/ep<1-4>" -> kLlm, anything else -> kAutomatic.
MeasureKind ClassifyMeasure(std::string_view measure_id);
std::string LlmMeasureId(std::string_view model_id, int variant);

struct RatingRecord {
  std::string measure_id;
  std::string story_prompt_id;
  std::string system_id;
  std::optional<Criterion> criterion;  // Absent for criterion-less measures.
  int try_index = 0;                   // Generation try or human rater index.
  double score = 0.0;
  std::optional<std::string> explanation;

  StoryKey story_key() const { return {story_prompt_id, system_id}; }
};

// Subset lookup; unset fields match anything.
struct RatingQuery {
  std::optional<std::string> measure_id = std::nullopt;
  std::optional<std::string> story_prompt_id = std::nullopt;
  std::optional<std::string> system_id = std::nullopt;
  std::optional<std::optional<Criterion>> criterion = std::nullopt;
  std::optional<int> try_index = std::nullopt;
};

// All scores, indexed by (measure, story, system, criterion, try). Read-only
// once built; concurrent const access is safe.
class RatingTensor {
 public:
  using Key = std::tuple<std::string, std::string, std::string, std::optional<Criterion>, int>;

  // Validates the record against its measure kind and rejects duplicates.
  // Throws DataError.
  void Add(RatingRecord record);

  const std::vector<RatingRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const RatingRecord* Find(const Key& key) const;
  std::vector<const RatingRecord*> Select(const RatingQuery& query) const;

  std::vector<std::string> MeasureIds() const;
  bool HasMeasure(std::string_view measure_id) const;
  // True when every record of the measure has no criterion.
  bool IsCriterionless(std::string_view measure_id) const;
  // Distinct try/rater indices present for a measure, ascending.
  std::vector<int> TryIndices(std::string_view measure_id) const;

 private:
  std::vector<RatingRecord> records_;
  std::map<Key, size_t> by_key_;
  std::map<std::string, std::vector<size_t>, std::less<>> by_measure_;
};

struct Dataset {
  std::vector<Story> stories;
  RatingTensor ratings;

  const Story* FindStory(const StoryKey& key) const;
  std::vector<std::string> SystemIds() const;
};

// Validates a single score against the rules of its measure kind. Returns an
// error message, or nullopt when valid.
std::optional<std::string> ValidateScore(MeasureKind kind, double score);

}  // namespace storyeval

#endif  // STORYEVAL_DATASET_H_
