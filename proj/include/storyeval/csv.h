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

#ifndef STORYEVAL_CSV_H_
#define STORYEVAL_CSV_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace storyeval::csv {

struct Row {
  std::vector<std::string> fields;
  // 1-based physical line on which the row starts.
  int line = 0;
};

// Parses RFC 4180 CSV (quoted fields may span lines, "" escapes a quote).
// Accepts LF or CRLF line endings. Throws DataError on an unterminated quote.
std::vector<Row> Read(std::istream& in);

void WriteRow(std::ostream& out, const std::vector<std::string>& fields);
std::string Escape(std::string_view field);

}  // namespace storyeval::csv

#endif  // STORYEVAL_CSV_H_
