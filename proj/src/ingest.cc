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

#include "storyeval/ingest.h"

#include <charconv>
#include <fstream>
#include <set>

#include "storyeval/csv.h"
#include "storyeval/error.h"

namespace storyeval {
namespace {

const std::vector<std::string> kStoryHeader = {"story_prompt_id", "system_id",
                                               "story_prompt_text", "story_text"};
const std::vector<std::string> kRatingHeader = {"measure_id", "story_prompt_id", "system_id",
                                                "criterion",  "try_index",       "score",
                                                "explanation"};

[[noreturn]] void Fail(std::string_view file, int line, const std::string& what) {
  throw DataError(std::string(file) + " line " + std::to_string(line) + ": " + what);
}

void CheckHeader(const std::vector<csv::Row>& rows, const std::vector<std::string>& expected,
                 std::string_view file) {
  if (rows.empty()) throw DataError(std::string(file) + ": missing header row");
  auto header = rows.front().fields;
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
  if (header != expected) Fail(file, rows.front().line, "unexpected header");
}

bool IsValidUtf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    int extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c >> 5) == 0x6) {
      extra = 1;
    } else if ((c >> 4) == 0xE) {
      extra = 2;
    } else if ((c >> 3) == 0x1E) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size() && extra > 0) return false;
    for (int k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    }
    i += extra + 1;
  }
  return true;
}

template <typename T>
bool ParseNumber(std::string_view text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::vector<Story> ReadStories(std::istream& stories_csv) {
  constexpr std::string_view kFile = "stories.csv";
  const auto rows = csv::Read(stories_csv);
  CheckHeader(rows, kStoryHeader, kFile);
  std::vector<Story> stories;
  std::set<StoryKey> seen;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != kStoryHeader.size()) {
      Fail(kFile, row.line, "expected 4 fields, got " + std::to_string(row.fields.size()));
    }
    Story story{row.fields[0], row.fields[1], row.fields[2], row.fields[3]};
    if (story.story_prompt_id.empty() || story.system_id.empty()) {
      Fail(kFile, row.line, "empty story_prompt_id or system_id");
    }
    if (story.text.empty()) Fail(kFile, row.line, "empty story_text");
    if (!IsValidUtf8(story.text) || !IsValidUtf8(story.story_prompt_text)) {
      Fail(kFile, row.line, "invalid UTF-8");
    }
    if (!seen.insert(story.key()).second) {
      Fail(kFile, row.line, "duplicate story (" + story.story_prompt_id + ", " +
                                story.system_id + ")");
    }
    stories.push_back(std::move(story));
  }
  return stories;
}

namespace {

// One record per data row, so record i came from rows[i + 1].
RatingTensor RatingsFromRows(const std::vector<csv::Row>& rows) {
  constexpr std::string_view kFile = "ratings.csv";
  CheckHeader(rows, kRatingHeader, kFile);
  RatingTensor tensor;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto& f = row.fields;
    if (f.size() != kRatingHeader.size() && f.size() != kRatingHeader.size() - 1) {
      Fail(kFile, row.line, "expected 7 fields, got " + std::to_string(f.size()));
    }
    RatingRecord record;
    record.measure_id = f[0];
    record.story_prompt_id = f[1];
    record.system_id = f[2];
    if (!f[3].empty()) {
      record.criterion = ParseCriterion(f[3]);
      if (!record.criterion) Fail(kFile, row.line, "unknown criterion '" + f[3] + "'");
    }
    if (!ParseNumber(f[4], record.try_index)) {
      Fail(kFile, row.line, "try_index '" + f[4] + "' is not an integer");
    }
    if (!ParseNumber(f[5], record.score)) {
      Fail(kFile, row.line, "score '" + f[5] + "' is not a number");
    }
    if (f.size() == kRatingHeader.size() && !f[6].empty()) record.explanation = f[6];
    try {
      tensor.Add(std::move(record));
    } catch (const DataError& e) {
      Fail(kFile, row.line, e.what());
    }
  }
  return tensor;
}

}  // namespace

RatingTensor ReadRatings(std::istream& ratings_csv) {
  return RatingsFromRows(csv::Read(ratings_csv));
}

Dataset IngestDataset(std::istream& stories_csv, std::istream& ratings_csv) {
  Dataset dataset;
  dataset.stories = ReadStories(stories_csv);
  std::set<StoryKey> keys;
  for (const auto& s : dataset.stories) keys.insert(s.key());

  const auto rows = csv::Read(ratings_csv);
  dataset.ratings = RatingsFromRows(rows);
  for (size_t i = 0; i < dataset.ratings.records().size(); ++i) {
    const auto& rec = dataset.ratings.records()[i];
    if (keys.count(rec.story_key()) == 0) {
      Fail("ratings.csv", rows[i + 1].line,
           "rating references unknown story (" + rec.story_prompt_id + ", " + rec.system_id + ")");
    }
  }
  return dataset;
}

Dataset IngestDataset(const std::filesystem::path& stories_csv,
                      const std::filesystem::path& ratings_csv) {
  std::ifstream stories(stories_csv, std::ios::binary);
  if (!stories) throw DataError("cannot open " + stories_csv.string());
  std::ifstream ratings(ratings_csv, std::ios::binary);
  if (!ratings) throw DataError("cannot open " + ratings_csv.string());
  return IngestDataset(stories, ratings);
}

std::string FormatScore(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteStories(std::ostream& out, const std::vector<Story>& stories) {
  csv::WriteRow(out, kStoryHeader);
  for (const auto& s : stories) {
    csv::WriteRow(out, {s.story_prompt_id, s.system_id, s.story_prompt_text, s.text});
  }
}

void WriteRatings(std::ostream& out, const RatingTensor& tensor) {
  csv::WriteRow(out, kRatingHeader);
  for (const auto& r : tensor.records()) {
    csv::WriteRow(out, {r.measure_id, r.story_prompt_id, r.system_id,
                        r.criterion ? std::string(CriterionCode(*r.criterion)) : std::string(),
                        std::to_string(r.try_index), FormatScore(r.score),
                        r.explanation.value_or("")});
  }
}

}  // namespace storyeval
