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

#include "storyeval/stats/meta_evaluation.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "storyeval/aggregate.h"
#include "storyeval/error.h"
#include "support/generators.h"
#include "support/oracles.h"

namespace storyeval::stats {
namespace {

void Put(RatingTensor& t, const std::string& measure, const std::string& prompt,
         const std::string& system, std::optional<Criterion> c, int try_index, double score) {
  t.Add({measure, prompt, system, c, try_index, score, std::nullopt});
}

constexpr auto kRE = Criterion::kRelevance;

TEST(Aggregate, MeanOverTries) {
  RatingTensor t;
  for (int i = 0; i < 3; ++i) Put(t, "m/ep1", "p1", "s1", kRE, i, 3 + i);
  Put(t, "human", "p1", "s1", kRE, 0, 2);
  Put(t, "human", "p1", "s1", kRE, 1, 3);
  Put(t, "human", "p1", "s1", kRE, 2, 5);
  Put(t, "human", "p2", "s1", kRE, 0, 4);
  EXPECT_DOUBLE_EQ(Aggregate(t, "m/ep1", kRE).at({"p1", "s1"}), 4.0);
  EXPECT_DOUBLE_EQ(Aggregate(t, "human", kRE).at({"p1", "s1"}), (2.0 + 3.0 + 5.0) / 3.0);
  EXPECT_DOUBLE_EQ(Aggregate(t, "human", kRE).at({"p2", "s1"}), 4.0);
  EXPECT_TRUE(Aggregate(t, "human", Criterion::kCoherence).empty());
  EXPECT_DOUBLE_EQ(Aggregate(t, "human", kRE, Reducer::kMedian).at({"p1", "s1"}), 3.0);
}

TEST(Aggregate, OrderAndTryPermutationInvariant) {
  gen::Gen g(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RatingRecord> recs;
    for (int s = 0; s < 4; ++s) {
      for (int k = 0; k < 3; ++k) {
        recs.push_back({"human", "p" + std::to_string(s), "sys", kRE, k,
                        static_cast<double>(g.Int(1, 5)), std::nullopt});
      }
    }
    RatingTensor a;
    for (const auto& r : recs) a.Add(r);
    std::shuffle(recs.begin(), recs.end(), g.rng());
    std::vector<int> perm = {2, 0, 1};
    RatingTensor b;
    for (auto r : recs) {
      r.try_index = perm[r.try_index];
      b.Add(r);
    }
    EXPECT_EQ(Aggregate(a, "human", kRE), Aggregate(b, "human", kRE));
  }
}

TEST(OverallCorrelation, MeasureWithItselfIsOne) {
  RatingTensor t;
  for (int i = 0; i < 6; ++i) Put(t, "human", "p" + std::to_string(i), "s", kRE, 0, 1 + i % 5);
  EXPECT_DOUBLE_EQ(
      OverallCorrelation(t, "human", "human", kRE, kRE, CoefficientKind::kKendall).value, 1.0);
}

TEST(OverallCorrelation, MatchesFlattenThenCorrelate) {
  gen::Gen g(42);
  for (int trial = 0; trial < 50; ++trial) {
    RatingTensor t;
    std::vector<double> x, y;
    for (int s = 0; s < 3; ++s) {
      for (int p = 0; p < 5; ++p) {
        const std::string pid = "p" + std::to_string(p), sid = "s" + std::to_string(s);
        double sum = 0;
        for (int k = 0; k < 3; ++k) {
          const int v = g.Int(1, 5);
          sum += v;
          Put(t, "human", pid, sid, kRE, k, v);
        }
        // The automatic measure is missing on one story: pairwise deletion.
        if (s == 1 && p == 2) continue;
        const double m = g.Real(-2, 2);
        Put(t, "bleu", pid, sid, std::nullopt, 0, m);
        x.push_back(sum / 3);
        y.push_back(m);
      }
    }
    const auto r = OverallCorrelation(t, "human", "bleu", kRE, std::nullopt,
                                      CoefficientKind::kKendall);
    EXPECT_EQ(r.n, 14);
    EXPECT_NEAR(r.value, oracle::KendallTauB(x, y), 1e-12);
  }
}

TEST(SystemLevelCorrelation, ThreeSystemsTwoStoriesByHand) {
  RatingTensor t;
  // human means: A = 2, B = 3.5, C = 3; measure means: A = 0.5, B = 0.2, C = 0.9.
  Put(t, "human", "p1", "A", kRE, 0, 1);
  Put(t, "human", "p2", "A", kRE, 0, 3);
  Put(t, "human", "p1", "B", kRE, 0, 3);
  Put(t, "human", "p2", "B", kRE, 0, 4);
  Put(t, "human", "p1", "C", kRE, 0, 3);
  Put(t, "human", "p2", "C", kRE, 0, 3);
  Put(t, "m", "p1", "A", std::nullopt, 0, 0.4);
  Put(t, "m", "p2", "A", std::nullopt, 0, 0.6);
  Put(t, "m", "p1", "B", std::nullopt, 0, 0.1);
  Put(t, "m", "p2", "B", std::nullopt, 0, 0.3);
  Put(t, "m", "p1", "C", std::nullopt, 0, 0.8);
  Put(t, "m", "p2", "C", std::nullopt, 0, 1.0);
  // Pairs (A,B): h up, m down -> D. (A,C): up, up -> C. (B,C): down, up -> D.
  const auto r = SystemLevelCorrelation(t, "human", "m", kRE, std::nullopt,
                                        CoefficientKind::kKendall);
  EXPECT_EQ(r.n, 3);
  EXPECT_NEAR(r.value, -1.0 / 3.0, 1e-15);
  const auto p = SystemLevelCorrelation(t, "human", "m", kRE, std::nullopt,
                                        CoefficientKind::kPearson);
  EXPECT_NEAR(p.value, oracle::Pearson({2, 3.5, 3}, {0.5, 0.2, 0.9}), 1e-12);
}

TEST(SystemLevelCorrelation, IdenticalSystemMeansGiveOne) {
  RatingTensor t;
  Put(t, "human", "p1", "A", kRE, 0, 1);
  Put(t, "human", "p2", "A", kRE, 0, 3);
  Put(t, "human", "p1", "B", kRE, 0, 4);
  Put(t, "human", "p2", "B", kRE, 0, 4);
  Put(t, "x/ep1", "p1", "A", kRE, 0, 2);
  Put(t, "x/ep1", "p2", "A", kRE, 0, 2);
  Put(t, "x/ep1", "p1", "B", kRE, 0, 5);
  Put(t, "x/ep1", "p2", "B", kRE, 0, 3);
  for (auto kind : {CoefficientKind::kPearson, CoefficientKind::kSpearman,
                    CoefficientKind::kKendall}) {
    EXPECT_DOUBLE_EQ(SystemLevelCorrelation(t, "human", "x/ep1", kRE, kRE, kind).value, 1.0);
  }
}

TEST(SystemLevelCorrelation, InvariantToStoryPermutationWithinSystem) {
  gen::Gen g(43);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<double>> h(4, std::vector<double>(5)), m(4, std::vector<double>(5));
    for (auto& row : h) for (auto& v : row) v = g.Int(1, 5);
    for (auto& row : m) for (auto& v : row) v = g.Real(0, 1);
    auto build = [&](bool shuffle) {
      RatingTensor t;
      for (int s = 0; s < 4; ++s) {
        std::vector<int> idx = {0, 1, 2, 3, 4};
        if (shuffle) std::shuffle(idx.begin(), idx.end(), g.rng());
        for (int p = 0; p < 5; ++p) {
          const std::string pid = "p" + std::to_string(p), sid = "s" + std::to_string(s);
          Put(t, "human", pid, sid, kRE, 0, h[s][idx[p]]);
          Put(t, "m", pid, sid, std::nullopt, 0, m[s][idx[p]]);
        }
      }
      return t;
    };
    const auto a = build(false), b = build(true);
    try {
      const double va = SystemLevelCorrelation(a, "human", "m", kRE, std::nullopt,
                                               CoefficientKind::kKendall).value;
      const double vb = SystemLevelCorrelation(b, "human", "m", kRE, std::nullopt,
                                               CoefficientKind::kKendall).value;
      EXPECT_DOUBLE_EQ(va, vb);
    } catch (const UndefinedCorrelationError&) {
    }
  }
}

TEST(SystemLevelCorrelation, ErrorsAndMissingPolicy) {
  RatingTensor t;
  Put(t, "human", "p1", "A", kRE, 0, 1);
  Put(t, "human", "p1", "B", kRE, 0, 3);
  Put(t, "human", "p1", "C", kRE, 0, 4);
  Put(t, "m", "p1", "A", std::nullopt, 0, 1);
  Put(t, "m", "p1", "B", std::nullopt, 0, 2);
  EXPECT_NO_THROW(SystemLevelCorrelation(t, "human", "m", kRE, std::nullopt,
                                         CoefficientKind::kPearson));
  EXPECT_THROW(SystemLevelCorrelation(t, "human", "m", kRE, std::nullopt,
                                      CoefficientKind::kPearson, MissingPolicy::kStrict),
               DataError);
  RatingTensor one;
  Put(one, "human", "p1", "A", kRE, 0, 1);
  Put(one, "human", "p2", "A", kRE, 0, 2);
  Put(one, "m", "p1", "A", std::nullopt, 0, 1);
  Put(one, "m", "p2", "A", std::nullopt, 0, 2);
  EXPECT_THROW(SystemLevelCorrelation(one, "human", "m", kRE, std::nullopt,
                                      CoefficientKind::kPearson),
               DataError);
}

TEST(MeanL1Distance, Examples) {
  RatingTensor t;
  Put(t, "human", "p1", "A", kRE, 0, 2);
  Put(t, "human", "p2", "A", kRE, 0, 4);
  Put(t, "same/ep1", "p1", "A", kRE, 0, 2);
  Put(t, "same/ep1", "p2", "A", kRE, 0, 4);
  Put(t, "shift/ep1", "p1", "A", kRE, 0, 3);
  Put(t, "shift/ep1", "p2", "A", kRE, 0, 5);
  EXPECT_DOUBLE_EQ(MeanL1Distance(t, "same/ep1", kRE), 0.0);
  EXPECT_DOUBLE_EQ(MeanL1Distance(t, "shift/ep1", kRE), 1.0);
  // Second rater: 1 and 5. Distances of "same": rater 0 -> 0, rater 1 ->
  // (|2-1| + |4-5|) / 2 = 1; mean 0.5.
  Put(t, "human", "p1", "A", kRE, 1, 1);
  Put(t, "human", "p2", "A", kRE, 1, 5);
  EXPECT_DOUBLE_EQ(MeanL1Distance(t, "same/ep1", kRE), 0.5);
  EXPECT_THROW(MeanL1Distance(t, "same/ep1", Criterion::kCoherence), DataError);
}

TEST(HumanBaseline, AverageOfRaterVersusMean) {
  RatingTensor t;
  const std::vector<std::vector<double>> raters = {{1, 2, 3, 4, 5}, {2, 2, 3, 5, 4},
                                                   {1, 3, 2, 4, 5}};
  std::vector<double> mean(5, 0.0);
  for (int k = 0; k < 3; ++k) {
    for (int p = 0; p < 5; ++p) {
      Put(t, "human", "p" + std::to_string(p), "A", kRE, k, raters[k][p]);
      mean[p] += raters[k][p] / 3.0;
    }
  }
  double expected = 0;
  for (const auto& r : raters) expected += oracle::KendallTauB(r, mean) / 3.0;
  EXPECT_NEAR(HumanBaselineCorrelation(t, kRE, CoefficientKind::kKendall).value, expected,
              1e-12);
}

TEST(BuildTryMatrix, DropsIncompleteCells) {
  RatingTensor t;
  for (int k = 0; k < 3; ++k) Put(t, "m/ep1", "p1", "A", kRE, k, 1 + k);
  for (int k = 0; k < 2; ++k) Put(t, "m/ep1", "p2", "A", kRE, k, 2);
  const auto tm = BuildTryMatrix(t, "m/ep1", kRE);
  EXPECT_EQ(tm.matrix.items(), 1);
  EXPECT_EQ(tm.matrix.raters(), 3);
  EXPECT_EQ(tm.dropped_incomplete, 1);
}

RatingTensor WilliamsFixture(uint64_t seed) {
  gen::Gen g(seed);
  RatingTensor t;
  for (int s = 0; s < 6; ++s) {
    for (int p = 0; p < 8; ++p) {
      const std::string pid = "p" + std::to_string(p), sid = "s" + std::to_string(s);
      const double q = 1 + 0.6 * s + g.Normal(0.7);
      for (auto c : {Criterion::kRelevance, Criterion::kCoherence}) {
        for (int k = 0; k < 3; ++k) {
          Put(t, "human", pid, sid, c, k, std::clamp(std::round(q + g.Normal(0.8)), 1.0, 5.0));
          Put(t, "ref/ep1", pid, sid, c, k, std::clamp(std::round(q + g.Normal(1.0)), 1.0, 5.0));
        }
      }
      Put(t, "auto1", pid, sid, std::nullopt, 0, q + g.Normal(2.0));
      Put(t, "auto2", pid, sid, std::nullopt, 0, g.Normal(1.0));
    }
  }
  return t;
}

TEST(WilliamsMatrix, SelfComparisonGivesHalf) {
  const auto t = WilliamsFixture(44);
  const auto res = WilliamsMatrix(t, "ref/ep1", {"ref/ep1"}, {kRE, Criterion::kCoherence},
                                  Level::kOverall, CoefficientKind::kKendall);
  for (const auto& row : res.cells) {
    ASSERT_TRUE(row[0].has_value());
    EXPECT_EQ(row[0]->test.p_one_sided, 0.5);
  }
}

TEST(WilliamsMatrix, ComposesWilliamsTestAndBh) {
  const auto t = WilliamsFixture(45);
  const std::vector<Criterion> criteria = {kRE, Criterion::kCoherence};
  const std::vector<std::string> comps = {"auto1", "auto2"};
  for (auto level : {Level::kOverall, Level::kSystem}) {
    const auto res = WilliamsMatrix(t, "ref/ep1", comps, criteria, level,
                                    CoefficientKind::kKendall);
    std::vector<double> raw;
    for (size_t r = 0; r < criteria.size(); ++r) {
      for (size_t c = 0; c < comps.size(); ++c) {
        const auto r12 = Correlation(t, level, "human", "ref/ep1", criteria[r], criteria[r],
                                     CoefficientKind::kKendall);
        const auto r13 = Correlation(t, level, "human", comps[c], criteria[r], std::nullopt,
                                     CoefficientKind::kKendall);
        const auto r23 = Correlation(t, level, "ref/ep1", comps[c], criteria[r], std::nullopt,
                                     CoefficientKind::kKendall);
        const auto w = WilliamsTest(r12.value, r13.value, r23.value, r12.n);
        ASSERT_TRUE(res.cells[r][c].has_value());
        EXPECT_NEAR(res.cells[r][c]->test.t, w.t, 1e-12);
        raw.push_back(w.p_one_sided);
      }
    }
    const auto adjusted = BhAdjust(raw);
    size_t i = 0;
    for (size_t r = 0; r < criteria.size(); ++r) {
      for (size_t c = 0; c < comps.size(); ++c) {
        EXPECT_NEAR(res.cells[r][c]->p_adjusted, adjusted[i++], 1e-12);
      }
    }
  }
}

TEST(WilliamsMatrix, UndefinedCellsAreMissing) {
  auto t = WilliamsFixture(46);
  for (int s = 0; s < 6; ++s) {
    for (int p = 0; p < 8; ++p) {
      Put(t, "flat", "p" + std::to_string(p), "s" + std::to_string(s), std::nullopt, 0, 1.0);
    }
  }
  const auto res = WilliamsMatrix(t, "ref/ep1", {"flat", "auto1"}, {kRE}, Level::kOverall,
                                  CoefficientKind::kKendall);
  EXPECT_FALSE(res.cells[0][0].has_value());
  EXPECT_TRUE(res.cells[0][1].has_value());
}

}  // namespace
}  // namespace storyeval::stats
