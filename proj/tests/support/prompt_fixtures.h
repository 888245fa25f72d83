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

// Story texts used by the prompt golden files.

#ifndef STORYEVAL_TESTS_SUPPORT_PROMPT_FIXTURES_H_
#define STORYEVAL_TESTS_SUPPORT_PROMPT_FIXTURES_H_

#include <map>

#include "storyeval/prompt/eval_prompt.h"

namespace storyeval::fixtures {

inline constexpr char kDeathPrompt[] = "You have become death, destroyer of worlds.";
inline constexpr char kDeathStory[] =
    "You look up to see all of them in fear. You just must fix this soon. Slowly, just like your "
    "Father always had instructed him, you look down and see all your foes dead and beaten down. "
    "You can't resist the urge to touch the wounds. For there is nothing you can do about it. "
    "[...]";
inline constexpr char kButtonStory[] =
    "I saw the button. It was simple, red, no words on it as I already knew what it did. I mean "
    "I built the button, I built what happens [...]";
inline constexpr char kMirrorPrompt[] =
    "A mirror shows your reflection and your future soulmate. You only see your reflection.";
inline constexpr char kMirrorStory[] =
    "Carnival music seemed to dance in the background. A cacophony of color and knick knacks "
    "decorated the fairgrounds. [...]";

// Spec behind tests/golden/ep<variant>_<code>.txt.
inline prompt::EvalPromptSpec GoldenSpec(int variant, Criterion c,
                                         const std::map<Criterion, prompt::Guidelines>& rubrics) {
  prompt::EvalPromptSpec spec;
  spec.variant = *prompt::VariantFromNumber(variant);
  spec.criterion = c;
  if (variant == 3) spec.guidelines = rubrics.at(c);
  if (variant == 4) spec.human_story = kButtonStory;
  return spec;
}

}  // namespace storyeval::fixtures

#endif  // STORYEVAL_TESTS_SUPPORT_PROMPT_FIXTURES_H_
