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

#ifndef STORYEVAL_PROMPT_EVALUATION_RUNNER_H_
#define STORYEVAL_PROMPT_EVALUATION_RUNNER_H_

#include <map>
#include <string>
#include <vector>

#include "storyeval/dataset.h"
#include "storyeval/error.h"
#include "storyeval/prompt/eval_prompt.h"
#include "storyeval/prompt/exchange.h"
#include "storyeval/prompt/model_client.h"

namespace storyeval::prompt {

struct EvaluationOptions {
  std::string model_id;
  PromptVariant variant = PromptVariant::kSimpleRating;
  std::vector<Criterion> criteria{kAllCriteria.begin(), kAllCriteria.end()};
  int tries = 3;
  SamplingParams sampling;
  // Generations per cell: the first plus regenerations after a failed
  // extraction.
  int max_attempts = 3;
  int transport_retries = 3;
  int retry_backoff_ms = 200;
  int parallelism = 4;
  // Never call the client; cache misses become failures.
  bool replay_only = false;
  // Abort once more than this fraction of cells failed, checked after
  // `abort_min_cells` cells have completed and again at the end.
  double abort_failure_rate = 0.5;
  int abort_min_cells = 20;
  // Required for kWithGuidelines; falls back to the built-in rubric.
  std::map<Criterion, Guidelines> guidelines;
};

struct CellFailure {
  StoryKey story;
  Criterion criterion = Criterion::kRelevance;
  int try_index = 0;
  ExchangeStatus status = ExchangeStatus::kTransportFailed;
  std::string detail;
};

struct EvaluationResult {
  RatingTensor ratings;               // measure id "<model>/ep<variant>"
  std::vector<LlmExchange> exchanges; // every attempt, in cell order
  std::vector<CellFailure> failures;  // cells recorded as missing
  int network_requests = 0;
};

class EvaluationAborted : public DataError {
 public:
  EvaluationAborted(const std::string& what, bool transport)
      : DataError(what), transport_(transport) {}
  // True when the failures were mostly transport errors.
  bool transport() const { return transport_; }

 private:
  bool transport_;
};

// Rates every (story, criterion, try) cell. Cached exchanges are replayed
// without touching the client, so an interrupted run resumes where it
// stopped. Output order is independent of `parallelism`.
//
// `client` may be null when `replay_only` is set. Throws DataError when a
// required guideline or human story is missing, EvaluationAborted when the
// failure rate exceeds the threshold.
EvaluationResult RunEvaluation(const std::vector<Story>& stories, ModelClient* client,
                               ExchangeCache& cache, const EvaluationOptions& options);

}  // namespace storyeval::prompt

#endif  // STORYEVAL_PROMPT_EVALUATION_RUNNER_H_
