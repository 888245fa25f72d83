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

#include "storyeval/aggregate.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace storyeval {

CellScores Aggregate(const RatingTensor& tensor, std::string_view measure_id,
                     std::optional<Criterion> criterion, Reducer reducer) {
  std::map<StoryKey, std::vector<double>> grouped;
  for (const RatingRecord* r :
       tensor.Select({.measure_id = std::string(measure_id), .criterion = criterion})) {
    grouped[r->story_key()].push_back(r->score);
  }
  CellScores out;
  for (auto& [key, values] : grouped) {
    std::sort(values.begin(), values.end());
    double value;
    if (reducer == Reducer::kMean) {
      value = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    } else {
      const size_t mid = values.size() / 2;
      value = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    }
    out.emplace(key, value);
  }
  return out;
}

CellScores ScoresForTry(const RatingTensor& tensor, std::string_view measure_id,
                        std::optional<Criterion> criterion, int try_index) {
  CellScores out;
  for (const RatingRecord* r : tensor.Select(
           {.measure_id = std::string(measure_id), .criterion = criterion, .try_index = try_index})) {
    out.emplace(r->story_key(), r->score);
  }
  return out;
}

}  // namespace storyeval
