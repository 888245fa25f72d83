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

#include "storyeval/criterion.h"

#include <algorithm>
#include <cctype>

namespace storyeval {
namespace {

struct CriterionInfo {
  std::string_view code;
  std::string_view label;
  std::string_view description;
};

constexpr std::array<CriterionInfo, 6> kInfo = {{
    {"RE", "Relevance", "how well the story matches its prompt"},
    {"CH", "Coherence", "how much the story makes sense"},
    {"EM", "Empathy", "how well the reader understood the character’s emotions"},
    {"SU", "Surprise", "how surprising the end of the story was"},
    {"EG", "Engagement", "how much the reader engaged with the story"},
    {"CX", "Complexity", "how elaborate the story is"},
}};

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view CriterionCode(Criterion c) { return kInfo[static_cast<int>(c)].code; }
std::string_view CriterionLabel(Criterion c) { return kInfo[static_cast<int>(c)].label; }
std::string_view CriterionDescription(Criterion c) {
  return kInfo[static_cast<int>(c)].description;
}

std::optional<Criterion> ParseCriterion(std::string_view text) {
  for (Criterion c : kAllCriteria) {
    if (EqualsIgnoreCase(text, CriterionCode(c)) || EqualsIgnoreCase(text, CriterionLabel(c))) {
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace storyeval
