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

#include "storyeval/report/simulator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace storyeval::report {

RatingTensor SimulateRaters(const SimulatedRaterConfig& config, int n_raters,
                            const std::string& measure_id) {
  for (double sd : {config.rater_bias_sd, config.noise_sd}) {
    if (!std::isfinite(sd) || sd < 0.0) {
      throw std::invalid_argument("simulator standard deviations must be finite and >= 0");
    }
  }
  if (n_raters < 1) throw std::invalid_argument("n_raters must be >= 1");

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> bias(static_cast<size_t>(n_raters));
  for (auto& b : bias) b = config.rater_bias_sd * unit(rng);

  RatingTensor tensor;
  for (const auto& [cell, quality] : config.true_quality) {
    const auto& [story, criterion] = cell;
    for (int r = 0; r < n_raters; ++r) {
      const double raw = quality + bias[r] + config.noise_sd * unit(rng);
      RatingRecord record;
      record.measure_id = measure_id;
      record.story_prompt_id = story.story_prompt_id;
      record.system_id = story.system_id;
      record.criterion = criterion;
      record.try_index = r;
      record.score = std::clamp(std::round(raw), 1.0, 5.0);
      tensor.Add(std::move(record));
    }
  }
  return tensor;
}

SyntheticCorpus MakeSyntheticCorpus(int prompts, const std::vector<double>& system_levels,
                                    double story_spread, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-story_spread, story_spread);
  SyntheticCorpus corpus;
  for (size_t j = 0; j < system_levels.size(); ++j) {
    for (int i = 0; i < prompts; ++i) {
      Story story;
      story.story_prompt_id = "p" + std::to_string(i);
      story.system_id = "sys" + std::to_string(j);
      story.story_prompt_text = "Story-prompt " + std::to_string(i) + ".";
      story.text = "Synthetic story " + std::to_string(i) + " from system " + std::to_string(j) + ".";
      for (Criterion c : kAllCriteria) {
        corpus.true_quality[{story.key(), c}] =
            std::clamp(system_levels[j] + (story_spread > 0.0 ? jitter(rng) : 0.0), 1.0, 5.0);
      }
      corpus.stories.push_back(std::move(story));
    }
  }
  return corpus;
}

}  // namespace storyeval::report
