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

#ifndef STORYEVAL_PROMPT_RATING_EXTRACTION_H_
#define STORYEVAL_PROMPT_RATING_EXTRACTION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace storyeval::prompt {

// Which pattern of the cascade produced the rating, in priority order.
enum class ExtractionForm {
  kRatingLabel,  // "Rating: 4"
  kRateA,        // "I would rate the story a 2 on Empathy", "a 2 on Empathy"
  kOutOfFive,    // "3/5", "3 out of 5"
  kStandalone,   // first standalone number in the answer
};

struct ExtractedRating {
  int rating = 0;
  std::string explanation;  // answer minus the rating fragment, trimmed
  ExtractionForm form = ExtractionForm::kRatingLabel;
};

// Runs the pattern cascade. The first form that matches decides: if its
// number is not an integer in 1..5 the answer is rejected rather than
// searched further. Returns nullopt on rejection or when nothing matches.
std::optional<ExtractedRating> ExtractRating(std::string_view raw_answer);

// An explanation counts as present with at least this many characters
// (code points) left after removing the rating.
inline constexpr size_t kMinExplanationChars = 20;
bool HasExplanation(std::string_view explanation);

}  // namespace storyeval::prompt

#endif  // STORYEVAL_PROMPT_RATING_EXTRACTION_H_
