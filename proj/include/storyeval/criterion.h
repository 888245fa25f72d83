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

#ifndef STORYEVAL_CRITERION_H_
#define STORYEVAL_CRITERION_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace storyeval {

// The six human evaluation criteria for stories.
enum class Criterion { kRelevance, kCoherence, kEmpathy, kSurprise, kEngagement, kComplexity };

inline constexpr std::array<Criterion, 6> kAllCriteria = {
    Criterion::kRelevance,  Criterion::kCoherence,  Criterion::kEmpathy,
    Criterion::kSurprise,   Criterion::kEngagement, Criterion::kComplexity};

// Two-letter code ("RE", "CH", ...).
std::string_view CriterionCode(Criterion c);
// Full name used in prompts ("Relevance", ...).
std::string_view CriterionLabel(Criterion c);
// One-line gloss rendered verbatim inside the prompt parenthetical.
std::string_view CriterionDescription(Criterion c);

// Accepts either the code or the label, case-insensitively.
std::optional<Criterion> ParseCriterion(std::string_view text);

}  // namespace storyeval

#endif  // STORYEVAL_CRITERION_H_
