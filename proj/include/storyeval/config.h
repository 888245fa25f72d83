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

#ifndef STORYEVAL_CONFIG_H_
#define STORYEVAL_CONFIG_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace storyeval {

// Flat view of a TOML-style file. Keys inside `[section]` are stored as
// "section.key". Values may be bare, or double-quoted with \" \\ \n \t
// escapes. `#` starts a comment outside quotes.
class Config {
 public:
  static Config Parse(std::istream& in, std::string_view source = "config");
  static Config Load(const std::filesystem::path& path);

  bool Has(std::string_view key) const;
  std::optional<std::string> GetString(std::string_view key) const;
  std::optional<double> GetDouble(std::string_view key) const;
  std::optional<long long> GetInt(std::string_view key) const;
  std::optional<bool> GetBool(std::string_view key) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::string source_;
  std::map<std::string, std::string, std::less<>> entries_;
};

}  // namespace storyeval

#endif  // STORYEVAL_CONFIG_H_
