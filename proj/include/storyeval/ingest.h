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

#ifndef STORYEVAL_INGEST_H_
#define STORYEVAL_INGEST_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "storyeval/dataset.h"

namespace storyeval {

// stories.csv: story_prompt_id,system_id,story_prompt_text,story_text
// ratings.csv: measure_id,story_prompt_id,system_id,criterion,try_index,score,explanation
//
// Every rating must reference an ingested story; errors name the offending
// line. Throws DataError.
Dataset IngestDataset(std::istream& stories_csv, std::istream& ratings_csv);
Dataset IngestDataset(const std::filesystem::path& stories_csv,
                      const std::filesystem::path& ratings_csv);

std::vector<Story> ReadStories(std::istream& stories_csv);
// Ratings without story validation.
RatingTensor ReadRatings(std::istream& ratings_csv);

void WriteStories(std::ostream& out, const std::vector<Story>& stories);
void WriteRatings(std::ostream& out, const RatingTensor& tensor);

// Shortest decimal form that parses back to the same double.
std::string FormatScore(double value);

}  // namespace storyeval

#endif  // STORYEVAL_INGEST_H_
