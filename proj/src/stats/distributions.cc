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

#include "storyeval/stats/distributions.h"

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace storyeval::stats {

double StudentTUpperTail(double t, double df) {
  boost::math::students_t dist(df);
  return boost::math::cdf(boost::math::complement(dist, t));
}

double StudentTQuantile(double p, double df) {
  boost::math::students_t dist(df);
  return boost::math::quantile(dist, p);
}

double FQuantile(double p, double df1, double df2) {
  boost::math::fisher_f dist(df1, df2);
  return boost::math::quantile(dist, p);
}

}  // namespace storyeval::stats
