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

#ifndef STORYEVAL_STATS_RELIABILITY_H_
#define STORYEVAL_STATS_RELIABILITY_H_

#include <span>
#include <utility>
#include <vector>

namespace storyeval::stats {

// Dense items x raters matrix, row-major.
class RaterMatrix {
 public:
  RaterMatrix(int items, int raters);
  RaterMatrix(int items, int raters, std::vector<double> values);

  int items() const { return items_; }
  int raters() const { return raters_; }
  double operator()(int item, int rater) const { return values_[item * raters_ + rater]; }
  double& operator()(int item, int rater) { return values_[item * raters_ + rater]; }
  std::span<const double> values() const { return values_; }

 private:
  int items_;
  int raters_;
  std::vector<double> values_;
};

struct TwoWayAnova {
  double ms_rows = 0.0;      // between items
  double ms_columns = 0.0;   // between raters
  double ms_error = 0.0;     // residual
};

TwoWayAnova ComputeTwoWayAnova(const RaterMatrix& m);

struct IccResult {
  double icc = 0.0;
  std::pair<double, double> ci95;
};

// ICC(2,k): two-way random effects, absolute agreement, mean of k raters.
// The 95% interval uses the F-distribution bounds of McGraw and Wong.
// Throws DataError on fewer than 2 items or raters, non-finite cells, or
// zero between-item variance. A lower bound is -inf when the single-rater
// bound falls at or below -1/(k-1).
IccResult Icc2k(const RaterMatrix& m);

struct MeanInterval {
  double mean = 0.0;
  double half_width = 0.0;  // t_{0.975, n-1} * s / sqrt(n)
};

// Throws DataError on fewer than 2 samples or non-finite entries.
MeanInterval Ci95Mean(std::span<const double> samples);

}  // namespace storyeval::stats

#endif  // STORYEVAL_STATS_RELIABILITY_H_
