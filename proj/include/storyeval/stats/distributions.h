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

#ifndef STORYEVAL_STATS_DISTRIBUTIONS_H_
#define STORYEVAL_STATS_DISTRIBUTIONS_H_

namespace storyeval::stats {

// P(T >= t) for Student's t with `df` degrees of freedom.
double StudentTUpperTail(double t, double df);
// Inverse CDF of Student's t.
double StudentTQuantile(double p, double df);
// Inverse CDF of the F distribution; degrees of freedom may be non-integer.
double FQuantile(double p, double df1, double df2);

}  // namespace storyeval::stats

#endif  // STORYEVAL_STATS_DISTRIBUTIONS_H_
