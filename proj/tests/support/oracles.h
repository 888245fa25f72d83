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

// Reference implementations used only by tests. Each one follows the
// textbook definition by the most direct route available and shares no code
// with the library.

#ifndef STORYEVAL_TESTS_SUPPORT_ORACLES_H_
#define STORYEVAL_TESTS_SUPPORT_ORACLES_H_

#include <utility>
#include <vector>

namespace storyeval::oracle {

// O(n^2) enumeration of concordant, discordant and tied pairs.
double KendallTauB(const std::vector<double>& x, const std::vector<double>& y);

// Two-pass Pearson on raw values.
double Pearson(const std::vector<double>& x, const std::vector<double>& y);

// Rank r_i = #{j : x_j < x_i} + (#{j : x_j == x_i} + 1) / 2, then Pearson.
double Spearman(const std::vector<double>& x, const std::vector<double>& y);

// Two-way ANOVA by sums of squares: SSE = SST - SSR - SSC.
struct AnovaTable {
  double ms_rows;
  double ms_columns;
  double ms_error;
};
AnovaTable TwoWayAnova(const std::vector<std::vector<double>>& rows);
double Icc2k(const std::vector<std::vector<double>>& rows);

// P(T_df >= t) by adaptive Simpson integration of the Student t density.
double StudentTUpperTail(double t, double df);

// The Williams statistic transcribed term by term.
double WilliamsT(double r12, double r13, double r23, int n);

// Ascending sort, then the mean of the first max(1, floor(k * T / 100)).
double MinKProb(std::vector<double> logprobs, double k_percent);

// Every (member, non-member) pair: 1 for a win, 1/2 for a tie.
double RocAuc(const std::vector<double>& scores, const std::vector<bool>& is_member);

// Gwet's AC1 from an explanations x raters 0/1 table (each row may have a
// different number of raters, at least 2).
double GwetAc1(const std::vector<std::vector<int>>& flags);

}  // namespace storyeval::oracle

#endif  // STORYEVAL_TESTS_SUPPORT_ORACLES_H_
