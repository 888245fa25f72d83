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

#include "storyeval/report/report_table.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "storyeval/csv.h"
#include "storyeval/ingest.h"

namespace storyeval::report {
namespace {

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s(buf);
  // Avoid "-0.00".
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

size_t DisplayWidth(const std::string& s) {
  size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace

ReportTable::ReportTable(std::string caption_text, std::vector<std::string> rows,
                         std::vector<std::string> columns)
    : caption(std::move(caption_text)),
      row_labels(std::move(rows)),
      column_labels(std::move(columns)),
      cells(row_labels.size(), std::vector<std::optional<ReportCell>>(column_labels.size())),
      bold(row_labels.size(), std::vector<bool>(column_labels.size(), false)) {}

bool ReportTable::HasIntervals() const {
  for (const auto& row : cells) {
    for (const auto& c : row) {
      if (c && c->ci_half_width) return true;
    }
  }
  return false;
}

void ReportTable::ComputeBold() {
  bold.assign(row_labels.size(), std::vector<bool>(column_labels.size(), false));
  for (size_t col = 0; col < column_labels.size(); ++col) {
    std::optional<size_t> best;
    for (size_t row = 0; row < row_labels.size(); ++row) {
      if (cells[row][col] && (!best || cells[row][col]->value > cells[*best][col]->value)) {
        best = row;
      }
    }
    if (!best) continue;
    const auto& top = *cells[*best][col];
    const double top_low = top.value - top.ci_half_width.value_or(0.0);
    for (size_t row = 0; row < row_labels.size(); ++row) {
      const auto& c = cells[row][col];
      if (c && c->value + c->ci_half_width.value_or(0.0) >= top_low) bold[row][col] = true;
    }
  }
}

namespace {

std::string RenderCsv(const ReportTable& t, bool full_precision) {
  auto format = [&](double v) { return full_precision ? FormatScore(v) : Fixed(v, t.decimals); };
  const bool intervals = t.HasIntervals();
  std::ostringstream out;
  std::vector<std::string> header = {""};
  for (const auto& c : t.column_labels) {
    header.push_back(c);
    if (intervals) header.push_back(c + "_ci");
  }
  csv::WriteRow(out, header);
  for (size_t r = 0; r < t.row_labels.size(); ++r) {
    std::vector<std::string> fields = {t.row_labels[r]};
    for (size_t c = 0; c < t.column_labels.size(); ++c) {
      const auto& cell = t.cells[r][c];
      fields.push_back(cell ? format(cell->value) : "");
      if (intervals) {
        fields.push_back(cell && cell->ci_half_width ? format(*cell->ci_half_width) : "");
      }
    }
    csv::WriteRow(out, fields);
  }
  return out.str();
}

}  // namespace

std::string ReportTable::ToCsv() const { return RenderCsv(*this, false); }
std::string ReportTable::ToFullPrecisionCsv() const { return RenderCsv(*this, true); }

std::string ReportTable::ToLongCsv() const {
  std::ostringstream out;
  csv::WriteRow(out, {"row", "column", "value", "ci_half_width", "bold"});
  for (size_t r = 0; r < row_labels.size(); ++r) {
    for (size_t c = 0; c < column_labels.size(); ++c) {
      const auto& cell = cells[r][c];
      if (!cell) continue;
      const bool b = r < bold.size() && c < bold[r].size() && bold[r][c];
      csv::WriteRow(out, {row_labels[r], column_labels[c], FormatScore(cell->value),
                          cell->ci_half_width ? FormatScore(*cell->ci_half_width) : "",
                          b ? "1" : "0"});
    }
  }
  return out.str();
}

std::string ReportTable::ToText() const {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({""});
  for (const auto& c : column_labels) grid[0].push_back(c);
  for (size_t r = 0; r < row_labels.size(); ++r) {
    std::vector<std::string> line = {row_labels[r]};
    for (size_t c = 0; c < column_labels.size(); ++c) {
      const auto& cell = cells[r][c];
      if (!cell) {
        line.push_back("-");
        continue;
      }
      std::string s = Fixed(cell->value, decimals);
      if (cell->ci_half_width) s += " ± " + Fixed(*cell->ci_half_width, decimals);
      if (r < bold.size() && c < bold[r].size() && bold[r][c]) s += "*";
      line.push_back(std::move(s));
    }
    grid.push_back(std::move(line));
  }
  std::vector<size_t> width(column_labels.size() + 1, 0);
  for (const auto& line : grid) {
    for (size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], DisplayWidth(line[i]));
  }
  std::ostringstream out;
  if (!caption.empty()) out << caption << "\n";
  for (const auto& line : grid) {
    for (size_t i = 0; i < line.size(); ++i) {
      if (i > 0) out << "  ";
      const size_t pad = width[i] - DisplayWidth(line[i]);
      if (i == 0) {
        out << line[i] << std::string(pad, ' ');
      } else {
        out << std::string(pad, ' ') << line[i];
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace storyeval::report
