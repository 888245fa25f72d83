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

#ifndef STORYEVAL_PROMPT_EXCHANGE_H_
#define STORYEVAL_PROMPT_EXCHANGE_H_

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "storyeval/criterion.h"
#include "storyeval/prompt/eval_prompt.h"

namespace storyeval::prompt {

struct SamplingParams {
  double temperature = 1.0;
  double top_p = 0.95;
  int max_tokens = 512;

  // (1, 0.95) for open-weight chat models, (0.7, 1) for the hosted GPT
  // family.
  static SamplingParams DefaultsFor(std::string_view model_id);
  // Throws std::invalid_argument when out of range.
  void Validate() const;
};

enum class ExchangeStatus { kOk, kExtractionFailed, kTransportFailed };
std::string_view StatusName(ExchangeStatus status);
std::optional<ExchangeStatus> ParseStatus(std::string_view name);

// One request/response round with the judge.
struct LlmExchange {
  std::string cache_key;
  std::string model_id;
  PromptVariant variant = PromptVariant::kSimpleRating;
  Criterion criterion = Criterion::kRelevance;
  std::string story_prompt_id;
  std::string system_id;
  int try_index = 0;
  int attempt = 0;  // regeneration index after failed extraction
  SamplingParams sampling;
  std::string prompt_text;
  std::string raw_answer;
  std::optional<int> extracted_rating;  // set iff status == kOk
  std::optional<std::string> explanation;
  ExchangeStatus status = ExchangeStatus::kOk;
};

// Hex SHA-256 of (model, variant, criterion, story-prompt, system, try).
std::string ComputeCacheKey(std::string_view model_id, PromptVariant variant,
                            Criterion criterion, std::string_view story_prompt_id,
                            std::string_view system_id, int try_index);

nlohmann::json ToJson(const LlmExchange& exchange);
// Throws std::invalid_argument on a malformed record.
LlmExchange ExchangeFromJson(const nlohmann::json& j);

// Append-only JSON Lines store of exchanges, keyed by (cache_key, attempt).
// Lookups and appends are thread-safe; appends go through one writer.
class ExchangeCache {
 public:
  // In-memory only.
  ExchangeCache() = default;
  // Loads `path` if it exists; new exchanges are appended to it.
  explicit ExchangeCache(std::filesystem::path path);

  std::optional<LlmExchange> Find(const std::string& cache_key, int attempt) const;
  // Transport failures are not persisted so a later run retries them.
  void Append(const LlmExchange& exchange);
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
  std::map<std::pair<std::string, int>, LlmExchange> entries_;
};

}  // namespace storyeval::prompt

#endif  // STORYEVAL_PROMPT_EXCHANGE_H_
