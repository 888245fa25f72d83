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

#ifndef STORYEVAL_PROMPT_MODEL_CLIENT_H_
#define STORYEVAL_PROMPT_MODEL_CLIENT_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "storyeval/prompt/exchange.h"

namespace storyeval::prompt {

struct CompletionRequest {
  std::string model;
  std::string prompt;
  SamplingParams sampling;
};

struct TokenLogProb {
  std::string token;
  double logprob = 0.0;
};

struct Completion {
  std::string text;
  std::vector<TokenLogProb> tokens;  // only when the endpoint returns them
};

// Wire contract: POST {model, prompt, temperature, top_p, max_tokens},
// response {text, tokens?: [{token, logprob}]}.
std::string EncodeCompletionRequest(const CompletionRequest& request);
CompletionRequest DecodeCompletionRequest(std::string_view body);
std::string EncodeCompletion(const Completion& completion);
// Throws TransportError on a body that does not follow the contract.
Completion DecodeCompletion(std::string_view body);

// Single-turn text completion. Implementations throw TransportError when the
// endpoint cannot produce an answer; they must be safe to call concurrently.
class ModelClient {
 public:
  virtual ~ModelClient() = default;
  virtual Completion Complete(const CompletionRequest& request) = 0;
};

struct Endpoint {
  std::string scheme_host_port;  // "http://localhost:8080"
  std::string path;              // "/v1/complete"
};
// Throws std::invalid_argument for anything but http(s)://host[:port][/path].
Endpoint ParseEndpoint(std::string_view url);

// Speaks the wire contract above.
class HttpModelClient : public ModelClient {
 public:
  explicit HttpModelClient(std::string url, int timeout_seconds = 120);
  Completion Complete(const CompletionRequest& request) override;

 private:
  Endpoint endpoint_;
  int timeout_seconds_;
};

// Adapter onto OpenAI-style /v1/chat/completions: the prompt becomes a single
// user message, the answer is choices[0].message.content.
class ChatCompletionsClient : public ModelClient {
 public:
  ChatCompletionsClient(std::string url, std::string api_key, int timeout_seconds = 120);
  Completion Complete(const CompletionRequest& request) override;

  static std::string EncodeRequest(const CompletionRequest& request);
  static Completion DecodeResponse(std::string_view body);

 private:
  Endpoint endpoint_;
  std::string api_key_;
  int timeout_seconds_;
};

// Wraps a callable; used by tests and the simulator.
class FunctionModelClient : public ModelClient {
 public:
  using Fn = std::function<Completion(const CompletionRequest&)>;
  explicit FunctionModelClient(Fn fn) : fn_(std::move(fn)) {}
  Completion Complete(const CompletionRequest& request) override { return fn_(request); }

 private:
  Fn fn_;
};

}  // namespace storyeval::prompt

#endif  // STORYEVAL_PROMPT_MODEL_CLIENT_H_
