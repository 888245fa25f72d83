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

#ifndef STORYEVAL_AGGREGATE_H_
#define STORYEVAL_AGGREGATE_H_

#include <map>
#include <optional>
#include <string_view>

#include "storyeval/dataset.h"

namespace storyeval {

// Per-story scores of one measure on one criterion. Missing stories are
// absent from the map, never zero.
using CellScores = std::map<StoryKey, double>;

enum class Reducer { kMean, kMedian };

// Reduces the try/rater axis. The reduction sorts each cell's values first,
// so the result does not depend on record order.
CellScores Aggregate(const RatingTensor& tensor, std::string_view measure_id,
                     std::optional<Criterion> criterion, Reducer reducer = Reducer::kMean);

// Scores of a single try/rater, unreduced.
CellScores ScoresForTry(const RatingTensor& tensor, std::string_view measure_id,
                        std::optional<Criterion> criterion, int try_index);

}  // namespace storyeval

#endif  // STORYEVAL_AGGREGATE_H_
