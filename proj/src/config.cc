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

#include "storyeval/config.h"

#include <charconv>
#include <fstream>

#include "storyeval/error.h"

namespace storyeval {
namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool ValidKey(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Config Config::Parse(std::istream& in, std::string_view source) {
  Config cfg;
  cfg.source_ = std::string(source);
  std::string section;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw DataError(cfg.source_ + " line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (view.front() == '[') {
      const auto close = view.find(']');
      if (close == std::string_view::npos) fail("unterminated section header");
      const auto rest = Trim(view.substr(close + 1));
      if (!rest.empty() && rest.front() != '#') fail("trailing text after section header");
      const auto name = Trim(view.substr(1, close - 1));
      if (!ValidKey(name)) fail("invalid section name");
      section = std::string(name);
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    const auto key = Trim(view.substr(0, eq));
    if (!ValidKey(key)) fail("invalid key '" + std::string(key) + "'");
    std::string_view raw = Trim(view.substr(eq + 1));
    std::string value;
    if (!raw.empty() && raw.front() == '"') {
      size_t i = 1;
      bool closed = false;
      for (; i < raw.size(); ++i) {
        const char c = raw[i];
        if (c == '"') {
          closed = true;
          break;
        }
        if (c == '\\') {
          if (++i >= raw.size()) fail("dangling escape");
          switch (raw[i]) {
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case '"': value += '"'; break;
            case '\\': value += '\\'; break;
            default: fail("unknown escape");
          }
        } else {
          value += c;
        }
      }
      if (!closed) fail("unterminated string");
      const auto rest = Trim(raw.substr(i + 1));
      if (!rest.empty() && rest.front() != '#') fail("trailing text after string");
    } else {
      const auto hash = raw.find('#');
      value = std::string(Trim(raw.substr(0, hash)));
      if (value.empty()) fail("empty value");
    }
    const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    if (!cfg.entries_.emplace(full, std::move(value)).second) fail("duplicate key '" + full + "'");
  }
  return cfg;
}

Config Config::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  return Parse(in, path.string());
}

bool Config::Has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::optional<std::string> Config::GetString(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Config::GetDouble(std::string_view key) const {
  const auto s = GetString(key);
  if (!s) return std::nullopt;
  double v = 0;
  const auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
  if (ec != std::errc() || p != s->data() + s->size()) {
    throw DataError(source_ + ": " + std::string(key) + " is not a number");
  }
  return v;
}

std::optional<long long> Config::GetInt(std::string_view key) const {
  const auto s = GetString(key);
  if (!s) return std::nullopt;
  long long v = 0;
  const auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
  if (ec != std::errc() || p != s->data() + s->size()) {
    throw DataError(source_ + ": " + std::string(key) + " is not an integer");
  }
  return v;
}

std::optional<bool> Config::GetBool(std::string_view key) const {
  const auto s = GetString(key);
  if (!s) return std::nullopt;
  if (*s == "true") return true;
  if (*s == "false") return false;
  throw DataError(source_ + ": " + std::string(key) + " is not a boolean");
}

}  // namespace storyeval
