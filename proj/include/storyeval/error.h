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

#ifndef STORYEVAL_ERROR_H_
#define STORYEVAL_ERROR_H_

#include <stdexcept>
#include <string>

namespace storyeval {

// Malformed or inconsistent input data. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A correlation whose value is undefined for the given input (zero variance,
// all pairs tied). Raised instead of returning NaN.
class UndefinedCorrelationError : public DataError {
 public:
  using DataError::DataError;
};

// Endpoint unreachable or returned an unusable response. Maps to exit code 3.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace storyeval

#endif  // STORYEVAL_ERROR_H_
