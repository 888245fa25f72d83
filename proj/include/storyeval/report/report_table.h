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

#ifndef STORYEVAL_REPORT_REPORT_TABLE_H_
#define STORYEVAL_REPORT_REPORT_TABLE_H_

#include <optional>
#include <string>
#include <vector>

namespace storyeval::report {

struct ReportCell {
  double value = 0.0;
  std::optional<double> ci_half_width;
};

// A captioned rows x columns table. Missing cells stay empty in every
// rendering.
struct ReportTable {
  std::string caption;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<std::optional<ReportCell>>> cells;  // [row][column]
  // Marks, per column, every cell whose interval overlaps the interval of
  // the column maximum. Filled by ComputeBold().
  std::vector<std::vector<bool>> bold;
  int decimals = 2;

  ReportTable() = default;
  ReportTable(std::string caption, std::vector<std::string> rows, std::vector<std::string> columns);

  bool HasIntervals() const;
  void ComputeBold();

  // Rounded values; a "<column>_ci" column follows each column when the
  // table carries intervals.
  std::string ToCsv() const;
  // Same layout at full precision (shortest round-trip form).
  std::string ToFullPrecisionCsv() const;
  // Long format for plotting: row,column,value,ci_half_width,bold.
  std::string ToLongCsv() const;
  // Aligned plain text; bold cells carry a trailing '*'.
  std::string ToText() const;
};

}  // namespace storyeval::report

#endif  // STORYEVAL_REPORT_REPORT_TABLE_H_
