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

#include "storyeval/prompt/evaluation_runner.h"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "storyeval/prompt/rating_extraction.h"

namespace storyeval::prompt {
namespace {

struct Cell {
  const Story* story;
  Criterion criterion;
  int try_index;
};

struct CellOutcome {
  std::vector<LlmExchange> exchanges;
  std::optional<RatingRecord> record;
  std::optional<CellFailure> failure;
  int network_requests = 0;
};

class CellEvaluator {
 public:
  CellEvaluator(ModelClient* client, ExchangeCache& cache, const EvaluationOptions& options,
                const std::map<std::string, std::string>& human_stories)
      : client_(client), cache_(cache), options_(options), human_stories_(human_stories) {}

  CellOutcome Evaluate(const Cell& cell) const {
    CellOutcome out;
    EvalPromptSpec spec{options_.variant, cell.criterion, std::nullopt, std::nullopt};
    if (options_.variant == PromptVariant::kWithGuidelines) {
      auto it = options_.guidelines.find(cell.criterion);
      spec.guidelines =
          it != options_.guidelines.end() ? it->second : *BuiltinGuidelines(cell.criterion);
    }
    if (options_.variant == PromptVariant::kWithHumanStory) {
      spec.human_story = human_stories_.at(cell.story->story_prompt_id);
    }
    const std::string prompt =
        BuildEvalPrompt(spec, cell.story->story_prompt_text, cell.story->text);
    const std::string key =
        ComputeCacheKey(options_.model_id, options_.variant, cell.criterion,
                        cell.story->story_prompt_id, cell.story->system_id, cell.try_index);

    for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
      LlmExchange exchange;
      if (auto cached = cache_.Find(key, attempt)) {
        exchange = std::move(*cached);
      } else {
        exchange = NewExchange(cell, key, attempt, prompt);
        std::string detail;
        if (auto answer = Generate(prompt, out.network_requests, detail)) {
          exchange.raw_answer = std::move(*answer);
          Extract(exchange);
          cache_.Append(exchange);
        } else {
          exchange.status = ExchangeStatus::kTransportFailed;
          out.exchanges.push_back(exchange);
          out.failure = CellFailure{cell.story->key(), cell.criterion, cell.try_index,
                                    ExchangeStatus::kTransportFailed, detail};
          return out;
        }
      }
      out.exchanges.push_back(exchange);
      if (exchange.status == ExchangeStatus::kOk) {
        RatingRecord record;
        record.measure_id = LlmMeasureId(options_.model_id, VariantNumber(options_.variant));
        record.story_prompt_id = cell.story->story_prompt_id;
        record.system_id = cell.story->system_id;
        record.criterion = cell.criterion;
        record.try_index = cell.try_index;
        record.score = *exchange.extracted_rating;
        if (exchange.explanation && !exchange.explanation->empty()) {
          record.explanation = exchange.explanation;
        }
        out.record = std::move(record);
        return out;
      }
    }
    out.failure = CellFailure{cell.story->key(), cell.criterion, cell.try_index,
                              ExchangeStatus::kExtractionFailed,
                              "no rating after " + std::to_string(options_.max_attempts) +
                                  " generations"};
    return out;
  }

 private:
  LlmExchange NewExchange(const Cell& cell, const std::string& key, int attempt,
                          const std::string& prompt) const {
    LlmExchange e;
    e.cache_key = key;
    e.model_id = options_.model_id;
    e.variant = options_.variant;
    e.criterion = cell.criterion;
    e.story_prompt_id = cell.story->story_prompt_id;
    e.system_id = cell.story->system_id;
    e.try_index = cell.try_index;
    e.attempt = attempt;
    e.sampling = options_.sampling;
    e.prompt_text = prompt;
    return e;
  }

  std::optional<std::string> Generate(const std::string& prompt, int& requests,
                                      std::string& detail) const {
    if (options_.replay_only || client_ == nullptr) {
      detail = "not in replay cache";
      return std::nullopt;
    }
    const CompletionRequest request{options_.model_id, prompt, options_.sampling};
    for (int retry = 0; retry <= options_.transport_retries; ++retry) {
      if (retry > 0 && options_.retry_backoff_ms > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(options_.retry_backoff_ms << (retry - 1)));
      }
      try {
        ++requests;
        return client_->Complete(request).text;
      } catch (const TransportError& e) {
        detail = e.what();
      }
    }
    return std::nullopt;
  }

  static void Extract(LlmExchange& exchange) {
    if (auto extracted = ExtractRating(exchange.raw_answer)) {
      exchange.status = ExchangeStatus::kOk;
      exchange.extracted_rating = extracted->rating;
      exchange.explanation = extracted->explanation;
    } else {
      exchange.status = ExchangeStatus::kExtractionFailed;
    }
  }

  ModelClient* client_;
  ExchangeCache& cache_;
  const EvaluationOptions& options_;
  const std::map<std::string, std::string>& human_stories_;
};

std::string AbortMessage(const EvaluationOptions& options, int failed, int completed) {
  std::ostringstream msg;
  msg << "aborting evaluation of " << options.model_id << ": " << failed << " of " << completed
      << " cells failed (threshold " << options.abort_failure_rate * 100 << "%)";
  return msg.str();
}

}  // namespace

EvaluationResult RunEvaluation(const std::vector<Story>& stories, ModelClient* client,
                               ExchangeCache& cache, const EvaluationOptions& options) {
  if (options.model_id.empty()) throw DataError("model id is required");
  if (options.tries < 1) throw DataError("tries must be >= 1");
  if (options.max_attempts < 1) throw DataError("max_attempts must be >= 1");
  options.sampling.Validate();
  if (!options.replay_only && client == nullptr) {
    throw DataError("a model client is required unless replaying");
  }

  std::map<std::string, std::string> human_stories;
  for (const auto& s : stories) {
    if (s.system_id == kHumanSystemId) human_stories.emplace(s.story_prompt_id, s.text);
  }
  for (Criterion c : options.criteria) {
    if (options.variant == PromptVariant::kWithGuidelines && !options.guidelines.count(c) &&
        !BuiltinGuidelines(c)) {
      throw DataError("Eval-Prompt 3 needs guidelines for " + std::string(CriterionLabel(c)));
    }
  }
  if (options.variant == PromptVariant::kWithHumanStory) {
    for (const auto& s : stories) {
      if (!human_stories.count(s.story_prompt_id)) {
        throw DataError("Eval-Prompt 4 needs a Human story for story-prompt " + s.story_prompt_id);
      }
    }
  }

  std::vector<Cell> cells;
  for (const auto& story : stories) {
    for (Criterion c : options.criteria) {
      for (int t = 0; t < options.tries; ++t) cells.push_back({&story, c, t});
    }
  }

  const CellEvaluator evaluator(client, cache, options, human_stories);
  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<size_t> next{0};
  std::atomic<int> completed{0};
  std::atomic<int> failed{0};
  std::atomic<int> transport_failed{0};
  std::atomic<bool> aborted{false};
  std::mutex error_mu;
  std::exception_ptr error;

  auto worker = [&] {
    while (!aborted.load()) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        outcomes[i] = evaluator.Evaluate(cells[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        aborted = true;
        return;
      }
      int f = failed.load();
      if (outcomes[i].failure) {
        f = failed.fetch_add(1) + 1;
        if (outcomes[i].failure->status == ExchangeStatus::kTransportFailed) ++transport_failed;
      }
      const int c = completed.fetch_add(1) + 1;
      if (c >= options.abort_min_cells && f > options.abort_failure_rate * c) aborted = true;
    }
  };
  const int threads = std::max(1, std::min<int>(options.parallelism, static_cast<int>(cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (error) std::rethrow_exception(error);
  const int done = completed.load();
  if (aborted || (done > 0 && failed.load() > options.abort_failure_rate * done)) {
    throw EvaluationAborted(AbortMessage(options, failed.load(), done),
                            2 * transport_failed.load() > failed.load());
  }

  EvaluationResult result;
  for (auto& outcome : outcomes) {
    result.network_requests += outcome.network_requests;
    for (auto& e : outcome.exchanges) result.exchanges.push_back(std::move(e));
    if (outcome.record) result.ratings.Add(std::move(*outcome.record));
    if (outcome.failure) result.failures.push_back(std::move(*outcome.failure));
  }
  return result;
}

}  // namespace storyeval::prompt
