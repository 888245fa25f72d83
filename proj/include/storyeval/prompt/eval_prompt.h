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

#ifndef STORYEVAL_PROMPT_EVAL_PROMPT_H_
#define STORYEVAL_PROMPT_EVAL_PROMPT_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "storyeval/criterion.h"

namespace storyeval::prompt {

enum class PromptVariant {
  kSimpleRating = 1,     // rating only
  kWithExplanation = 2,  // + "explain your answer"
  kWithGuidelines = 3,   // + 5-line rubric
  kWithHumanStory = 4,   // + human story given for reference
};

std::optional<PromptVariant> VariantFromNumber(int number);
int VariantNumber(PromptVariant variant);
bool RequestsExplanation(PromptVariant variant);

// Rubric text for ratings 1..5, without the leading number.
using Guidelines = std::array<std::string, 5>;

struct EvalPromptSpec {
  PromptVariant variant = PromptVariant::kSimpleRating;
  Criterion criterion = Criterion::kRelevance;
  std::optional<Guidelines> guidelines;   // required iff kWithGuidelines
  std::optional<std::string> human_story; // required iff kWithHumanStory
};

// Renders the exact prompt text sent to the judge. Throws
// std::invalid_argument when the variant's required block is missing.
std::string BuildEvalPrompt(const EvalPromptSpec& spec, std::string_view story_prompt_text,
                            std::string_view story_text);

// Parses exactly five lines numbered 1..5 in order ("1 — text", "1 - text",
// "1. text", "1: text" or "1) text"). Throws std::invalid_argument.
Guidelines ParseGuidelines(std::string_view text);

// Sections headed by a criterion code or label in brackets ("[SU]"), each
// followed by five numbered lines.
std::map<Criterion, Guidelines> ParseGuidelinesFile(std::string_view text);
std::map<Criterion, Guidelines> ReadGuidelinesFile(const std::filesystem::path& path);

// Built-in rubrics. Only Surprise ships with the toolkit; the other
// criteria must come from a guidelines file.
std::optional<Guidelines> BuiltinGuidelines(Criterion criterion);

}  // namespace storyeval::prompt

#endif  // STORYEVAL_PROMPT_EVAL_PROMPT_H_
