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

#include "storyeval/stats/reliability.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "storyeval/error.h"
#include "support/generators.h"
#include "support/oracles.h"

namespace storyeval::stats {
namespace {

RaterMatrix FromRows(const std::vector<std::vector<double>>& rows) {
  RaterMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

const std::vector<std::vector<double>> kSixByThree = {
    {9, 2, 5}, {6, 1, 3}, {8, 4, 6}, {7, 1, 2}, {10, 5, 6}, {6, 2, 4}};

TEST(TwoWayAnova, MatchesSumOfSquaresOracle) {
  const auto ours = ComputeTwoWayAnova(FromRows(kSixByThree));
  const auto ref = oracle::TwoWayAnova(kSixByThree);
  EXPECT_NEAR(ours.ms_rows, ref.ms_rows, 1e-12);
  EXPECT_NEAR(ours.ms_columns, ref.ms_columns, 1e-12);
  EXPECT_NEAR(ours.ms_error, ref.ms_error, 1e-12);
  EXPECT_NEAR(ours.ms_rows, 6.9, 1e-12);
  EXPECT_NEAR(ours.ms_columns, 247.0 / 6.0, 1e-12);
  EXPECT_NEAR(ours.ms_error, 17.0 / 30.0, 1e-12);
}

TEST(Icc2k, SixByThreeFixture) {
  const auto r = Icc2k(FromRows(kSixByThree));
  EXPECT_NEAR(r.icc, oracle::Icc2k(kSixByThree), 1e-12);
  EXPECT_NEAR(r.icc, 19.0 / 41.0, 1e-12);
  // F-bound interval computed independently with scipy.stats.f.
  EXPECT_NEAR(r.ci95.first, -0.02689200535651448, 1e-9);
  EXPECT_NEAR(r.ci95.second, 0.8806285692562401, 1e-9);
}

TEST(Icc2k, IdenticalRatersGiveOne) {
  const auto r = Icc2k(FromRows({{1, 1, 1}, {3, 3, 3}, {2, 2, 2}, {5, 5, 5}}));
  EXPECT_EQ(r.icc, 1.0);
  EXPECT_EQ(r.ci95.first, 1.0);
  EXPECT_EQ(r.ci95.second, 1.0);
}

TEST(Icc2k, ConstantShiftBetweenRatersIsNotPerfect) {
  const auto r = Icc2k(FromRows({{1, 2}, {2, 3}, {3, 4}, {4, 5}}));
  EXPECT_LT(r.icc, 1.0);
  EXPECT_NEAR(r.icc, oracle::Icc2k({{1, 2}, {2, 3}, {3, 4}, {4, 5}}), 1e-12);
  EXPECT_LE(r.ci95.first, r.icc);
  EXPECT_GE(r.ci95.second, r.icc);
}

TEST(Icc2k, RandomMatricesMatchOracle) {
  gen::Gen g(31);
  int checked = 0;
  while (checked < 500) {
    const auto rows = g.RaterRows(g.Int(2, 40), g.Int(2, 6), g.Coin());
    const auto ref = oracle::TwoWayAnova(rows);
    if (ref.ms_rows < 1e-9) continue;
    const auto r = Icc2k(FromRows(rows));
    ASSERT_NEAR(r.icc, oracle::Icc2k(rows), 1e-9 * std::max(1.0, std::fabs(r.icc)));
    // With MSE above MSR the estimator leaves [-1, 1] and the F bounds no
    // longer bracket it, so containment is only claimed for positive ICC.
    if (ref.ms_rows > ref.ms_error) {
      ASSERT_LE(r.ci95.first, r.icc + 1e-12);
      ASSERT_GE(r.ci95.second, r.icc - 1e-12);
    }
    ++checked;
  }
}

TEST(Icc2k, RejectsDegenerateInput) {
  EXPECT_THROW(Icc2k(FromRows({{1, 2, 3}})), DataError);
  EXPECT_THROW(Icc2k(FromRows({{1}, {2}})), DataError);
  EXPECT_THROW(Icc2k(FromRows({{3, 3}, {3, 3}})), DataError);
  EXPECT_THROW(Icc2k(FromRows({{1, 2}, {2, 1}})), DataError);  // zero item variance
  EXPECT_THROW(Icc2k(FromRows({{1, NAN}, {2, 3}})), DataError);
}

TEST(Ci95Mean, TextbookInterval) {
  const auto ci = Ci95Mean(std::vector<double>{1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(ci.mean, 3.0);
  // s^2 = 2.5, t_{0.975,4} = 2.7764451051977987.
  EXPECT_NEAR(ci.half_width, 2.7764451051977987 * std::sqrt(2.5) / std::sqrt(5.0), 1e-13);
}

TEST(Ci95Mean, ConstantAndNegation) {
  EXPECT_EQ(Ci95Mean(std::vector<double>{3, 3, 3}).half_width, 0.0);
  const std::vector<double> v = {1.5, 2, 4.25, 3};
  const std::vector<double> neg = {-1.5, -2, -4.25, -3};
  EXPECT_DOUBLE_EQ(Ci95Mean(v).mean, -Ci95Mean(neg).mean);
  EXPECT_DOUBLE_EQ(Ci95Mean(v).half_width, Ci95Mean(neg).half_width);
  EXPECT_THROW(Ci95Mean(std::vector<double>{1}), DataError);
}

}  // namespace
}  // namespace storyeval::stats
