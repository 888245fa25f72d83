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

#include "storyeval/prompt/exchange.h"

#include <openssl/sha.h>

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "storyeval/error.h"

namespace storyeval::prompt {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

SamplingParams SamplingParams::DefaultsFor(std::string_view model_id) {
  const auto id = Lower(model_id);
  if (id.rfind("gpt-", 0) == 0 || id.find("chatgpt") != std::string::npos) {
    return {0.7, 1.0, 512};
  }
  return {1.0, 0.95, 512};
}

void SamplingParams::Validate() const {
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw std::invalid_argument("top_p must be in (0, 1]");
  if (max_tokens <= 0) throw std::invalid_argument("max_tokens must be > 0");
}

std::string_view StatusName(ExchangeStatus status) {
  switch (status) {
    case ExchangeStatus::kOk:
      return "ok";
    case ExchangeStatus::kExtractionFailed:
      return "extraction_failed";
    case ExchangeStatus::kTransportFailed:
      return "transport_failed";
  }
  return "unknown";
}

std::optional<ExchangeStatus> ParseStatus(std::string_view name) {
  for (auto s : {ExchangeStatus::kOk, ExchangeStatus::kExtractionFailed,
                 ExchangeStatus::kTransportFailed}) {
    if (name == StatusName(s)) return s;
  }
  return std::nullopt;
}

std::string ComputeCacheKey(std::string_view model_id, PromptVariant variant,
                            Criterion criterion, std::string_view story_prompt_id,
                            std::string_view system_id, int try_index) {
  // Unit separator between fields keeps the encoding unambiguous.
  const std::string variant_number = std::to_string(VariantNumber(variant));
  std::string material;
  for (std::string_view part :
       {model_id, std::string_view(variant_number), CriterionCode(criterion), story_prompt_id,
        system_id}) {
    material.append(part);
    material.push_back('\x1f');
  }
  material += std::to_string(try_index);

  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(material.data()), material.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : digest) {
    hex.push_back(kHex[b >> 4]);
    hex.push_back(kHex[b & 0xF]);
  }
  return hex;
}

nlohmann::json ToJson(const LlmExchange& e) {
  nlohmann::json j;
  j["cache_key"] = e.cache_key;
  j["model_id"] = e.model_id;
  j["variant"] = VariantNumber(e.variant);
  j["criterion"] = std::string(CriterionCode(e.criterion));
  j["story_prompt_id"] = e.story_prompt_id;
  j["system_id"] = e.system_id;
  j["try_index"] = e.try_index;
  j["attempt"] = e.attempt;
  j["temperature"] = e.sampling.temperature;
  j["top_p"] = e.sampling.top_p;
  j["max_tokens"] = e.sampling.max_tokens;
  j["prompt_text"] = e.prompt_text;
  j["raw_answer"] = e.raw_answer;
  j["extracted_rating"] = e.extracted_rating ? nlohmann::json(*e.extracted_rating) : nullptr;
  j["explanation"] = e.explanation ? nlohmann::json(*e.explanation) : nullptr;
  j["status"] = std::string(StatusName(e.status));
  return j;
}

LlmExchange ExchangeFromJson(const nlohmann::json& j) {
  try {
    LlmExchange e;
    e.cache_key = j.at("cache_key").get<std::string>();
    e.model_id = j.at("model_id").get<std::string>();
    const auto variant = VariantFromNumber(j.at("variant").get<int>());
    const auto criterion = ParseCriterion(j.at("criterion").get<std::string>());
    const auto status = ParseStatus(j.at("status").get<std::string>());
    if (!variant || !criterion || !status) throw std::invalid_argument("bad enum field");
    e.variant = *variant;
    e.criterion = *criterion;
    e.status = *status;
    e.story_prompt_id = j.at("story_prompt_id").get<std::string>();
    e.system_id = j.at("system_id").get<std::string>();
    e.try_index = j.at("try_index").get<int>();
    e.attempt = j.value("attempt", 0);
    e.sampling.temperature = j.value("temperature", e.sampling.temperature);
    e.sampling.top_p = j.value("top_p", e.sampling.top_p);
    e.sampling.max_tokens = j.value("max_tokens", e.sampling.max_tokens);
    e.prompt_text = j.value("prompt_text", "");
    e.raw_answer = j.at("raw_answer").get<std::string>();
    if (j.contains("extracted_rating") && !j["extracted_rating"].is_null()) {
      e.extracted_rating = j["extracted_rating"].get<int>();
    }
    if (j.contains("explanation") && !j["explanation"].is_null()) {
      e.explanation = j["explanation"].get<std::string>();
    }
    if (e.extracted_rating.has_value() != (e.status == ExchangeStatus::kOk)) {
      throw std::invalid_argument("extracted_rating must be present iff status is ok");
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed exchange record: ") + ex.what());
  }
}

ExchangeCache::ExchangeCache(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(*path_)) {
    std::ifstream in(*path_, std::ios::binary);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        auto e = ExchangeFromJson(nlohmann::json::parse(line));
        auto key = std::make_pair(e.cache_key, e.attempt);
        entries_.insert_or_assign(std::move(key), std::move(e));
      } catch (const std::exception& ex) {
        throw DataError(path_->string() + " line " + std::to_string(line_no) + ": " +
                                    ex.what());
      }
    }
  } else if (path_->has_parent_path()) {
    std::filesystem::create_directories(path_->parent_path());
  }
}

std::optional<LlmExchange> ExchangeCache::Find(const std::string& cache_key, int attempt) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find({cache_key, attempt});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ExchangeCache::Append(const LlmExchange& exchange) {
  if (exchange.status == ExchangeStatus::kTransportFailed) return;
  std::lock_guard<std::mutex> lock(mu_);
  if (path_) {
    if (!out_.is_open()) {
      out_.open(*path_, std::ios::binary | std::ios::app);
      if (!out_) throw DataError("cannot write cache file " + path_->string());
    }
    out_ << ToJson(exchange).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
         << '\n';
    out_.flush();
  }
  entries_.insert_or_assign({exchange.cache_key, exchange.attempt}, exchange);
}

size_t ExchangeCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

}  // namespace storyeval::prompt
