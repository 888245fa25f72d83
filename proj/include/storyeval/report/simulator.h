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

#ifndef STORYEVAL_REPORT_SIMULATOR_H_
#define STORYEVAL_REPORT_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "storyeval/dataset.h"

namespace storyeval::report {

using QualityMap = std::map<std::pair<StoryKey, Criterion>, double>;

struct SimulatedRaterConfig {
  QualityMap true_quality;   // latent quality in [1, 5]
  double rater_bias_sd = 0.0;
  double noise_sd = 0.0;
  uint64_t seed = 0;
};

// score = clamp(round(quality + bias_r + noise), 1, 5), with one bias per
// rater and fresh noise per score. Raters go on the try axis. Deterministic
// for a given seed. Throws std::invalid_argument on negative or non-finite
// standard deviations.
RatingTensor SimulateRaters(const SimulatedRaterConfig& config, int n_raters,
                            const std::string& measure_id = std::string(kHumanMeasureId));

struct SyntheticCorpus {
  std::vector<Story> stories;
  QualityMap true_quality;
};

// `prompts` story-prompts per system; system j has base quality
// system_levels[j], each (story, criterion) jittered uniformly by
// +-story_spread and clamped to [1, 5]. System ids are "sys<j>".
SyntheticCorpus MakeSyntheticCorpus(int prompts, const std::vector<double>& system_levels,
                                    double story_spread, uint64_t seed);

}  // namespace storyeval::report

#endif  // STORYEVAL_REPORT_SIMULATOR_H_
