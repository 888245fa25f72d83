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

#include "storyeval/prompt/model_client.h"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <regex>
#include <stdexcept>

#include "storyeval/error.h"

namespace storyeval::prompt {
namespace {

using nlohmann::json;

std::string Dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

std::string Post(const Endpoint& endpoint, int timeout_seconds, const std::string& body,
                 const httplib::Headers& headers) {
  httplib::Client client(endpoint.scheme_host_port);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  auto response = client.Post(endpoint.path, headers, body, "application/json");
  if (!response) {
    throw TransportError("POST " + endpoint.scheme_host_port + endpoint.path + " failed: " +
                         httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw TransportError("POST " + endpoint.scheme_host_port + endpoint.path + " returned HTTP " +
                         std::to_string(response->status));
  }
  return response->body;
}

}  // namespace

std::string EncodeCompletionRequest(const CompletionRequest& request) {
  json j;
  j["model"] = request.model;
  j["prompt"] = request.prompt;
  j["temperature"] = request.sampling.temperature;
  j["top_p"] = request.sampling.top_p;
  j["max_tokens"] = request.sampling.max_tokens;
  return Dump(j);
}

CompletionRequest DecodeCompletionRequest(std::string_view body) {
  try {
    const auto j = json::parse(body);
    CompletionRequest r;
    r.model = j.at("model").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.sampling.temperature = j.at("temperature").get<double>();
    r.sampling.top_p = j.at("top_p").get<double>();
    r.sampling.max_tokens = j.at("max_tokens").get<int>();
    return r;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed completion request: ") + e.what());
  }
}

std::string EncodeCompletion(const Completion& completion) {
  json j;
  j["text"] = completion.text;
  if (!completion.tokens.empty()) {
    j["tokens"] = json::array();
    for (const auto& t : completion.tokens) {
      j["tokens"].push_back({{"token", t.token}, {"logprob", t.logprob}});
    }
  }
  return Dump(j);
}

Completion DecodeCompletion(std::string_view body) {
  try {
    const auto j = json::parse(body);
    Completion c;
    c.text = j.at("text").get<std::string>();
    if (j.contains("tokens") && !j["tokens"].is_null()) {
      for (const auto& t : j["tokens"]) {
        c.tokens.push_back({t.at("token").get<std::string>(), t.at("logprob").get<double>()});
      }
    }
    return c;
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed completion response: ") + e.what());
  }
}

Endpoint ParseEndpoint(std::string_view url) {
  static const std::regex kUrl(R"(^(https?://[^/\s]+)(/\S*)?$)");
  std::cmatch m;
  if (!std::regex_match(url.begin(), url.end(), m, kUrl)) {
    throw std::invalid_argument("invalid endpoint URL: " + std::string(url));
  }
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

HttpModelClient::HttpModelClient(std::string url, int timeout_seconds)
    : endpoint_(ParseEndpoint(url)), timeout_seconds_(timeout_seconds) {}

Completion HttpModelClient::Complete(const CompletionRequest& request) {
  return DecodeCompletion(Post(endpoint_, timeout_seconds_, EncodeCompletionRequest(request), {}));
}

ChatCompletionsClient::ChatCompletionsClient(std::string url, std::string api_key,
                                             int timeout_seconds)
    : endpoint_(ParseEndpoint(url)), api_key_(std::move(api_key)),
      timeout_seconds_(timeout_seconds) {}

std::string ChatCompletionsClient::EncodeRequest(const CompletionRequest& request) {
  json j;
  j["model"] = request.model;
  j["messages"] = json::array({{{"role", "user"}, {"content", request.prompt}}});
  j["temperature"] = request.sampling.temperature;
  j["top_p"] = request.sampling.top_p;
  j["max_tokens"] = request.sampling.max_tokens;
  return Dump(j);
}

Completion ChatCompletionsClient::DecodeResponse(std::string_view body) {
  try {
    const auto j = json::parse(body);
    const auto& choice = j.at("choices").at(0);
    Completion c;
    c.text = choice.at("message").at("content").get<std::string>();
    if (choice.contains("logprobs") && choice["logprobs"].is_object() &&
        choice["logprobs"].contains("content")) {
      for (const auto& t : choice["logprobs"]["content"]) {
        c.tokens.push_back({t.at("token").get<std::string>(), t.at("logprob").get<double>()});
      }
    }
    return c;
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat completion response: ") + e.what());
  }
}

Completion ChatCompletionsClient::Complete(const CompletionRequest& request) {
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  return DecodeResponse(Post(endpoint_, timeout_seconds_, EncodeRequest(request), headers));
}

}  // namespace storyeval::prompt
