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

#include "storyeval/prompt/rating_extraction.h"

#include <array>
#include <cmath>
#include <regex>
#include <string>

namespace storyeval::prompt {
namespace {

// Numbers are captured with an optional sign and fraction so that "3.5" or
// "-2" are rejected instead of being read as 3 or 2.
#define STORYEVAL_NUMBER R"((-?\d+(?:\.\d+)?))"

struct Pattern {
  ExtractionForm form;
  std::regex re;
  int group;  // capture group holding the number
};

const std::array<Pattern, 5>& Cascade() {
  using std::regex_constants::ECMAScript;
  using std::regex_constants::icase;
  static const std::array<Pattern, 5> kCascade = {{
      {ExtractionForm::kRatingLabel,
       std::regex(R"(\brating\s*[:=]\s*\**\s*)" STORYEVAL_NUMBER, ECMAScript | icase), 1},
      {ExtractionForm::kRateA,
       std::regex(R"(\brat(?:e|ing)\b[^.\n\d]*?\ban?\s+)" STORYEVAL_NUMBER
                  R"((?:\s+on\s+[A-Za-z]+)?)",
                  ECMAScript | icase),
       1},
      {ExtractionForm::kRateA,
       std::regex(R"(\ban?\s+)" STORYEVAL_NUMBER R"(\s+on\s+[A-Za-z]+)", ECMAScript | icase), 1},
      {ExtractionForm::kOutOfFive,
       std::regex(STORYEVAL_NUMBER R"(\s*(?:/|out\s+of)\s*5(?!\d|\.\d))", ECMAScript | icase), 1},
      {ExtractionForm::kStandalone,
       std::regex(R"((?:^|[^\w./-]))" STORYEVAL_NUMBER
                  R"((?![\w%/]|\.\d|\s*(?:/|out\s+of)\s*\d))",
                  ECMAScript | icase),
       1},
  }};
  return kCascade;
}

#undef STORYEVAL_NUMBER

std::optional<int> ToRating(const std::string& text) {
  if (text.find('.') != std::string::npos || text.empty() || text[0] == '-') return std::nullopt;
  if (text.size() > 2) return std::nullopt;
  const int value = std::stoi(text);
  if (value < 1 || value > 5) return std::nullopt;
  return value;
}

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string Tidy(std::string s) {
  // Collapse runs of spaces left behind by the removal.
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ' && !out.empty() && out.back() == ' ') continue;
    out.push_back(c);
  }
  size_t first = 0;
  while (first < out.size() && (IsSpace(out[first]) || out[first] == '.' || out[first] == ',' ||
                                out[first] == ':' || out[first] == ';')) {
    ++first;
  }
  size_t last = out.size();
  while (last > first && IsSpace(out[last - 1])) --last;
  return out.substr(first, last - first);
}

}  // namespace

std::optional<ExtractedRating> ExtractRating(std::string_view raw_answer) {
  const std::string answer(raw_answer);
  for (const auto& pattern : Cascade()) {
    std::smatch m;
    if (!std::regex_search(answer, m, pattern.re)) continue;
    const auto rating = ToRating(m[pattern.group].str());
    if (!rating) return std::nullopt;

    size_t begin = static_cast<size_t>(m.position(pattern.group));
    size_t end = begin + static_cast<size_t>(m.length(pattern.group));
    if (pattern.form != ExtractionForm::kStandalone) {
      begin = static_cast<size_t>(m.position(0));
      end = begin + static_cast<size_t>(m.length(0));
    }
    if (pattern.form == ExtractionForm::kRateA) {
      // "I would rate the story a 2 on Empathy." is a rating sentence; drop
      // all of it.
      const auto stop = answer.find_last_of(".!?\n", begin == 0 ? 0 : begin - 1);
      begin = (stop == std::string::npos || begin == 0) ? 0 : stop + 1;
      const auto next = answer.find_first_of(".!?\n", end);
      end = next == std::string::npos ? answer.size() : next + 1;
    }
    ExtractedRating out;
    out.rating = *rating;
    out.form = pattern.form;
    out.explanation = Tidy(answer.substr(0, begin) + " " + answer.substr(end));
    return out;
  }
  return std::nullopt;
}

bool HasExplanation(std::string_view explanation) {
  size_t code_points = 0;
  for (char c : explanation) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++code_points;
  }
  return code_points >= kMinExplanationChars;
}

}  // namespace storyeval::prompt
