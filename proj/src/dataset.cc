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

#include "storyeval/dataset.h"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "storyeval/error.h"

namespace storyeval {

MeasureKind ClassifyMeasure(std::string_view measure_id) {
  if (measure_id == kHumanMeasureId) return MeasureKind::kHuman;
  static const std::regex kLlmPattern(".+/ep[1-4]");
  if (std::regex_match(measure_id.begin(), measure_id.end(), kLlmPattern)) {
    return MeasureKind::kLlm;
  }
  return MeasureKind::kAutomatic;
}

std::string LlmMeasureId(std::string_view model_id, int variant) {
  return std::string(model_id) + "/ep" + std::to_string(variant);
}

std::optional<std::string> ValidateScore(MeasureKind kind, double score) {
  if (!std::isfinite(score)) return "score is not finite";
  if (kind == MeasureKind::kAutomatic) return std::nullopt;
  if (score < 1.0 || score > 5.0) return "Likert score outside [1, 5]";
  if (kind == MeasureKind::kLlm && score != std::floor(score)) {
    return "LLM score is not an integer";
  }
  return std::nullopt;
}

void RatingTensor::Add(RatingRecord record) {
  if (record.measure_id.empty()) throw DataError("rating record without measure_id");
  if (record.try_index < 0) throw DataError("negative try_index");
  const MeasureKind kind = ClassifyMeasure(record.measure_id);
  if (kind != MeasureKind::kAutomatic && !record.criterion) {
    throw DataError("measure " + record.measure_id + " requires a criterion");
  }
  if (auto err = ValidateScore(kind, record.score)) {
    throw DataError(*err + " (measure " + record.measure_id + ", score " +
                    std::to_string(record.score) + ")");
  }
  Key key{record.measure_id, record.story_prompt_id, record.system_id, record.criterion,
          record.try_index};
  if (by_key_.count(key) != 0) {
    throw DataError("duplicate rating for measure " + record.measure_id + ", story (" +
                    record.story_prompt_id + ", " + record.system_id + "), try " +
                    std::to_string(record.try_index));
  }
  const size_t index = records_.size();
  by_key_.emplace(std::move(key), index);
  by_measure_[record.measure_id].push_back(index);
  records_.push_back(std::move(record));
}

const RatingRecord* RatingTensor::Find(const Key& key) const {
  auto it = by_key_.find(key);
  return it == by_key_.end() ? nullptr : &records_[it->second];
}

std::vector<const RatingRecord*> RatingTensor::Select(const RatingQuery& query) const {
  auto matches = [&](const RatingRecord& r) {
    return (!query.story_prompt_id || *query.story_prompt_id == r.story_prompt_id) &&
           (!query.system_id || *query.system_id == r.system_id) &&
           (!query.criterion || *query.criterion == r.criterion) &&
           (!query.try_index || *query.try_index == r.try_index);
  };
  std::vector<const RatingRecord*> out;
  if (query.measure_id) {
    auto it = by_measure_.find(*query.measure_id);
    if (it == by_measure_.end()) return out;
    for (size_t i : it->second) {
      if (matches(records_[i])) out.push_back(&records_[i]);
    }
    return out;
  }
  for (const auto& r : records_) {
    if (matches(r)) out.push_back(&r);
  }
  return out;
}

std::vector<std::string> RatingTensor::MeasureIds() const {
  std::vector<std::string> ids;
  ids.reserve(by_measure_.size());
  for (const auto& [id, _] : by_measure_) ids.push_back(id);
  return ids;
}

bool RatingTensor::HasMeasure(std::string_view measure_id) const {
  return by_measure_.find(measure_id) != by_measure_.end();
}

bool RatingTensor::IsCriterionless(std::string_view measure_id) const {
  auto it = by_measure_.find(measure_id);
  if (it == by_measure_.end()) return false;
  return std::all_of(it->second.begin(), it->second.end(),
                     [&](size_t i) { return !records_[i].criterion.has_value(); });
}

std::vector<int> RatingTensor::TryIndices(std::string_view measure_id) const {
  std::set<int> tries;
  auto it = by_measure_.find(measure_id);
  if (it != by_measure_.end()) {
    for (size_t i : it->second) tries.insert(records_[i].try_index);
  }
  return {tries.begin(), tries.end()};
}

const Story* Dataset::FindStory(const StoryKey& key) const {
  for (const auto& s : stories) {
    if (s.story_prompt_id == key.story_prompt_id && s.system_id == key.system_id) return &s;
  }
  return nullptr;
}

std::vector<std::string> Dataset::SystemIds() const {
  std::set<std::string> ids;
  for (const auto& s : stories) ids.insert(s.system_id);
  return {ids.begin(), ids.end()};
}

}  // namespace storyeval
