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

#include "storyeval/prompt/eval_prompt.h"

#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace storyeval::prompt {
namespace {

constexpr std::string_view kGuidelineDash = " — ";

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> NonEmptyLines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto trimmed = Trim(line);
    if (!trimmed.empty()) lines.push_back(std::move(trimmed));
  }
  return lines;
}

}  // namespace

std::optional<PromptVariant> VariantFromNumber(int number) {
  if (number < 1 || number > 4) return std::nullopt;
  return static_cast<PromptVariant>(number);
}

int VariantNumber(PromptVariant variant) { return static_cast<int>(variant); }

bool RequestsExplanation(PromptVariant variant) {
  return variant != PromptVariant::kSimpleRating;
}

std::string BuildEvalPrompt(const EvalPromptSpec& spec, std::string_view story_prompt_text,
                            std::string_view story_text) {
  const bool with_guidelines = spec.variant == PromptVariant::kWithGuidelines;
  const bool with_human = spec.variant == PromptVariant::kWithHumanStory;
  if (with_guidelines && !spec.guidelines) {
    throw std::invalid_argument("Eval-Prompt 3 requires guidelines");
  }
  if (with_human && !spec.human_story) {
    throw std::invalid_argument("Eval-Prompt 4 requires a human story");
  }

  std::string out;
  out += "Prompt: ";
  out += story_prompt_text;
  out += "\n\nTarget Story: ";
  out += story_text;
  out += "\n\n";
  if (with_guidelines) {
    out += "Guidelines:\n";
    for (size_t i = 0; i < spec.guidelines->size(); ++i) {
      out += std::to_string(i + 1);
      out += kGuidelineDash;
      out += (*spec.guidelines)[i];
      out += '\n';
    }
    out += '\n';
  }
  if (with_human) {
    out += "Human Story: ";
    out += *spec.human_story;
    out += "\n\n";
  }
  out += with_human ? "Rate the target story" : "Rate the story";
  out += " on a scale from 1 to 5 on ";
  out += CriterionLabel(spec.criterion);
  out += " (";
  out += CriterionDescription(spec.criterion);
  out += ")";
  if (RequestsExplanation(spec.variant)) out += " and explain your answer";
  out += ".";
  if (with_guidelines) out += " Use the provided guidelines.";
  if (with_human) out += " Do not rate the human story; it is here only for reference.";
  out += " Rating:";
  return out;
}

Guidelines ParseGuidelines(std::string_view text) {
  static const std::regex kLine(R"(^([1-5])\s*(?:—|–|-|\.|:|\))\s*(.+)$)");
  const auto lines = NonEmptyLines(text);
  if (lines.size() != 5) {
    throw std::invalid_argument("guidelines must have exactly 5 numbered lines, got " +
                                std::to_string(lines.size()));
  }
  Guidelines out;
  for (size_t i = 0; i < 5; ++i) {
    std::smatch m;
    if (!std::regex_match(lines[i], m, kLine) || m[1].str() != std::to_string(i + 1)) {
      throw std::invalid_argument("guideline line " + std::to_string(i + 1) +
                                  " is not numbered " + std::to_string(i + 1));
    }
    out[i] = Trim(m[2].str());
  }
  return out;
}

std::map<Criterion, Guidelines> ParseGuidelinesFile(std::string_view text) {
  static const std::regex kHeader(R"(^\[\s*([A-Za-z]+)\s*\]$)");
  std::map<Criterion, Guidelines> out;
  std::optional<Criterion> current;
  std::string body;
  auto flush = [&] {
    if (current) out[*current] = ParseGuidelines(body);
    body.clear();
  };
  for (const auto& line : NonEmptyLines(text)) {
    if (line[0] == '#') continue;
    std::smatch m;
    if (std::regex_match(line, m, kHeader)) {
      flush();
      current = ParseCriterion(m[1].str());
      if (!current) throw std::invalid_argument("unknown criterion section [" + m[1].str() + "]");
      if (out.count(*current)) {
        throw std::invalid_argument("duplicate section [" + m[1].str() + "]");
      }
      continue;
    }
    if (!current) throw std::invalid_argument("guideline line outside a [criterion] section");
    body += line;
    body += '\n';
  }
  flush();
  return out;
}

std::map<Criterion, Guidelines> ReadGuidelinesFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open guidelines file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGuidelinesFile(buffer.str());
}

std::optional<Guidelines> BuiltinGuidelines(Criterion criterion) {
  if (criterion != Criterion::kSurprise) return std::nullopt;
  return Guidelines{
      "The ending seemed completely obvious from the start, or doesn’t make any sense at all.",
      "The ending was easily predictable after a few sentences.",
      "The ending was predictable after half of the story.",
      "The ending surprised you, but would have been difficult to predict.",
      "The ending surprised you, and still seemed as if it could very reasonably have been "
      "predicted, ie, there were enough clues in the story.",
  };
}

}  // namespace storyeval::prompt
