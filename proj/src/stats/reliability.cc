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

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "storyeval/error.h"
#include "storyeval/stats/distributions.h"

namespace storyeval::stats {

RaterMatrix::RaterMatrix(int items, int raters)
    : items_(items), raters_(raters), values_(static_cast<size_t>(items) * raters, 0.0) {}

RaterMatrix::RaterMatrix(int items, int raters, std::vector<double> values)
    : items_(items), raters_(raters), values_(std::move(values)) {
  if (values_.size() != static_cast<size_t>(items) * static_cast<size_t>(raters)) {
    throw DataError("rater matrix size does not match items x raters");
  }
}

TwoWayAnova ComputeTwoWayAnova(const RaterMatrix& m) {
  const int n = m.items();
  const int k = m.raters();
  std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
  double grand = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      row_mean[i] += m(i, j);
      col_mean[j] += m(i, j);
      grand += m(i, j);
    }
  }
  for (auto& v : row_mean) v /= k;
  for (auto& v : col_mean) v /= n;
  grand /= static_cast<double>(n) * k;

  double ss_rows = 0.0, ss_cols = 0.0, ss_err = 0.0;
  for (int i = 0; i < n; ++i) ss_rows += (row_mean[i] - grand) * (row_mean[i] - grand);
  ss_rows *= k;
  for (int j = 0; j < k; ++j) ss_cols += (col_mean[j] - grand) * (col_mean[j] - grand);
  ss_cols *= n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      const double e = m(i, j) - row_mean[i] - col_mean[j] + grand;
      ss_err += e * e;
    }
  }
  return {ss_rows / (n - 1), ss_cols / (k - 1),
          ss_err / (static_cast<double>(n - 1) * (k - 1))};
}

IccResult Icc2k(const RaterMatrix& m) {
  const int n = m.items();
  const int k = m.raters();
  if (n < 2 || k < 2) throw DataError("ICC needs at least 2 items and 2 raters");
  for (double v : m.values()) {
    if (!std::isfinite(v)) throw DataError("ICC matrix is incomplete (non-finite cell)");
  }
  const TwoWayAnova a = ComputeTwoWayAnova(m);
  // Residuals below rounding noise count as exact agreement.
  const double scale = std::max(a.ms_rows, 1.0);
  const double msr = a.ms_rows;
  const double msc = a.ms_columns < 1e-14 * scale ? 0.0 : a.ms_columns;
  const double mse = a.ms_error < 1e-14 * scale ? 0.0 : a.ms_error;
  if (!(msr > 1e-14)) throw DataError("ICC undefined: zero between-item variance");

  IccResult result;
  result.icc = (msr - mse) / (msr + (msc - mse) / n);
  if (mse == 0.0 && msc == 0.0) {
    result.ci95 = {1.0, 1.0};
    return result;
  }

  // Single-rater ICC(2,1) and Satterthwaite degrees of freedom.
  const double icc2 = (msr - mse) / (msr + (k - 1) * mse + k * (msc - mse) / n);
  const double b = n * (1.0 + (k - 1) * icc2) - k * icc2;
  double v;
  if (mse == 0.0) {
    v = k - 1.0;  // limit as MSC/MSE -> infinity
  } else {
    const double fc = msc / mse;
    const double a_term = k * icc2 * fc;
    v = (k - 1.0) * (n - 1.0) * (a_term + b) * (a_term + b) /
        ((n - 1.0) * k * k * icc2 * icc2 * fc * fc + b * b);
  }
  const double f_upper = FQuantile(0.975, n - 1.0, v);
  const double f_lower = FQuantile(0.975, v, n - 1.0);
  const double c = k * msc + (static_cast<double>(k) * n - k - n) * mse;
  const double low1 = n * (msr - f_upper * mse) / (f_upper * c + n * msr);
  const double high1 = n * (f_lower * msr - mse) / (c + n * f_lower * msr);
  // Spearman-Brown is increasing only above -1/(k-1); a single-rater bound
  // at or below that pole leaves the k-rater bound unbounded below.
  auto step_up = [k](double r) {
    const double d = 1.0 + r * (k - 1);
    return d > 0.0 ? r * k / d : -std::numeric_limits<double>::infinity();
  };
  result.ci95 = {step_up(low1), step_up(high1)};
  return result;
}

MeanInterval Ci95Mean(std::span<const double> samples) {
  if (samples.size() < 2) throw DataError("confidence interval needs at least 2 samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double s : samples) {
    if (!std::isfinite(s)) throw DataError("non-finite sample");
    mean += s;
  }
  mean /= n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, StudentTQuantile(0.975, n - 1.0) * sd / std::sqrt(n)};
}

}  // namespace storyeval::stats
