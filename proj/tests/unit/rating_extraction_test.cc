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

#include "storyeval/prompt/rating_extraction.h"

#include <gtest/gtest.h>

#include "support/answer_corpus.h"

namespace storyeval::prompt {
namespace {

TEST(ExtractRating, ReferenceAnswerShape) {
  const auto r = ExtractRating(
      "I would rate the story a 2 on Empathy. While I could relate to the character's feelings "
      "of indifference towards the mirror, I did not feel a strong emotional connection to any "
      "of the characters.");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->rating, 2);
  EXPECT_EQ(r->form, ExtractionForm::kRateA);
  EXPECT_EQ(r->explanation.rfind("While I could relate", 0), 0u);
}

TEST(ExtractRating, CanonicalAndOutOfRange) {
  ASSERT_TRUE(ExtractRating("Rating: 5"));
  EXPECT_EQ(ExtractRating("Rating: 5")->rating, 5);
  EXPECT_EQ(ExtractRating("Rating: 5")->explanation, "");
  EXPECT_FALSE(ExtractRating("I give it a 7"));
}

TEST(ExtractRating, FirstStageDecides) {
  // The label wins over an earlier "N/5".
  EXPECT_EQ(ExtractRating("It is 2/5 at best. Rating: 4")->rating, 4);
  // A rejected label does not fall through to later numbers.
  EXPECT_FALSE(ExtractRating("Rating: 7. I would rate the story a 3."));
  // First standalone number only.
  EXPECT_FALSE(ExtractRating("There are 9 characters, so 3."));
}

TEST(ExtractRating, ExplanationIsAnswerWithoutRating) {
  const auto r = ExtractRating("The story is vivid and well paced. Rating: 4");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->explanation, "The story is vivid and well paced.");
  const auto s = ExtractRating("Rating: 3\nThe ending felt earned.");
  EXPECT_EQ(s->explanation, "The ending felt earned.");
}

TEST(ExtractRating, RoundTripEveryTemplateAndRating) {
  for (const auto& t : corpus::kTemplates) {
    for (int n = 1; n <= 5; ++n) {
      const auto answer = corpus::Fill(t.text, n);
      const auto r = ExtractRating(answer);
      ASSERT_TRUE(r) << answer;
      EXPECT_EQ(r->rating, n) << answer;
      EXPECT_EQ(r->form, t.form) << answer;
      EXPECT_EQ(r->explanation.find(std::to_string(n) + "/5"), std::string::npos);
    }
  }
}

TEST(ExtractRating, NegativeCorpus) {
  for (const auto& answer : corpus::kNegatives) {
    EXPECT_FALSE(ExtractRating(answer)) << "accepted: " << answer;
  }
}

TEST(HasExplanation, CountsCodePoints) {
  EXPECT_FALSE(HasExplanation(""));
  EXPECT_FALSE(HasExplanation("Too short."));
  EXPECT_TRUE(HasExplanation("Exactly twenty chars"));
  EXPECT_FALSE(HasExplanation("nineteen characters"));
  // 19 code points, 38 bytes.
  EXPECT_FALSE(HasExplanation("ééééééééééééééééééé"));
  EXPECT_TRUE(HasExplanation("éééééééééééééééééééé"));
}

}  // namespace
}  // namespace storyeval::prompt
