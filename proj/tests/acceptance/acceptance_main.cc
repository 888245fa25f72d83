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

// Acceptance runner. Prints one PASS / FAIL / NOT RUN line per criterion.
//
//   storyeval_acceptance [--criterion N] [--data DIR] [--cli PATH] [--work DIR]
//
// Exit status: 0 when every selected criterion passed, 1 on any failure,
// 77 when nothing failed but at least one criterion could not run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "storyeval/aggregate.h"
#include "storyeval/contamination/min_k_prob.h"
#include "storyeval/ingest.h"
#include "storyeval/prompt/eval_prompt.h"
#include "storyeval/prompt/rating_extraction.h"
#include "storyeval/report/reports.h"
#include "storyeval/report/simulator.h"
#include "storyeval/stats/correlation.h"
#include "storyeval/stats/meta_evaluation.h"
#include "storyeval/stats/reliability.h"
#include "storyeval/stats/significance.h"
#include "storyeval/study/explanation_study.h"
#include "support/answer_corpus.h"
#include "support/generators.h"
#include "support/oracles.h"
#include "support/prompt_fixtures.h"

namespace fs = std::filesystem;

namespace storyeval::acceptance {
namespace {

enum class Verdict { kPass, kFail, kNotRun };

// Collects failed checks for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void Near(double actual, double expected, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(17);
    s << what << ": got " << actual << ", want " << expected << " +/- " << tol;
    Expect(std::fabs(actual - expected) <= tol, s.str());
  }
  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::ostringstream s;
    s << checks_ - failed_ << "/" << checks_ << " checks";
    for (const auto& f : failures_) s << "; " << f;
    return s.str();
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome FromCheck(const Check& c) { return {c.ok() ? Verdict::kPass : Verdict::kFail, c.Summary()}; }

struct Options {
  fs::path data_dir = STORYEVAL_TEST_DATA_DIR;
  fs::path cli;
  fs::path work_dir = fs::temp_directory_path() / "storyeval_acceptance";
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> ToRows(const stats::RaterMatrix& m) {
  std::vector<std::vector<double>> rows(m.items(), std::vector<double>(m.raters()));
  for (int i = 0; i < m.items(); ++i) {
    for (int j = 0; j < m.raters(); ++j) rows[i][j] = m(i, j);
  }
  return rows;
}

stats::RaterMatrix FromRows(const std::vector<std::vector<double>>& rows) {
  stats::RaterMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

// 1. Statistics kernels against independent oracles.
Outcome StatisticsOracles(const Options&) {
  const auto start = std::chrono::steady_clock::now();
  Check check;
  gen::Gen g(20240101);

  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = g.Int(2, 50);
    const auto x = g.NonConstantTiedVector(n);
    const auto y = g.NonConstantTiedVector(n);
    check.Near(stats::KendallTauB(x, y), oracle::KendallTauB(x, y), 1e-12, "kendall tau-b");
  }

  int icc_cases = 0;
  while (icc_cases < 500) {
    const auto rows = g.RaterRows(g.Int(2, 60), g.Int(2, 6), g.Coin());
    if (oracle::TwoWayAnova(rows).ms_rows < 1e-9) continue;
    const double expected = oracle::Icc2k(rows);
    check.Near(stats::Icc2k(FromRows(rows)).icc, expected,
               1e-9 * std::max(1.0, std::fabs(expected)), "icc2k");
    ++icc_cases;
  }

  int williams_cases = 0;
  while (williams_cases < 500) {
    const double r12 = g.Real(-0.95, 0.95);
    const double r13 = g.Real(-0.95, 0.95);
    const double r23 = g.Real(-0.95, 0.95);
    if (1 - r12 * r12 - r13 * r13 - r23 * r23 + 2 * r12 * r13 * r23 <= 0.0) continue;
    const int n = g.Int(4, 2000);
    const auto w = stats::WilliamsTest(r12, r13, r23, n);
    check.Near(w.t, oracle::WilliamsT(r12, r13, r23, n), 1e-12, "williams t");
    ++williams_cases;
  }
  for (double r23 : {-0.5, 0.0, 0.7, 1.0}) {
    const auto w = stats::WilliamsTest(0.6, 0.6, r23, 30);
    check.Expect(w.t == 0.0 && w.p_one_sided == 0.5, "williams r12 == r13 gives t=0, p=0.5");
  }

  check.Expect(stats::BhAdjust(std::vector<double>{0.01, 0.02, 0.03}) ==
                   std::vector<double>{0.03, 0.03, 0.03},
               "bh [0.01, 0.02, 0.03]");
  check.Expect(stats::BhAdjust(std::vector<double>{0.005, 0.04}) == std::vector<double>{0.01, 0.04},
               "bh [0.005, 0.04]");

  const double elapsed = Seconds(start);
  check.Expect(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s >= 10 s");
  auto out = FromCheck(check);
  out.detail += "; " + std::to_string(elapsed).substr(0, 5) + " s";
  return out;
}

// 2. Released annotation export. Expects STORYEVAL_HANNA_DIR with
// stories.csv and ratings.csv in the ingest schema and study.csv.
Outcome ReleasedData(const Options&) {
  const char* dir_env = std::getenv("STORYEVAL_HANNA_DIR");
  if (dir_env == nullptr || *dir_env == '\0') {
    return {Verdict::kNotRun, "STORYEVAL_HANNA_DIR is not set; released export unavailable"};
  }
  const fs::path dir = dir_env;
  const char* beluga_env = std::getenv("STORYEVAL_HANNA_BELUGA_MEASURE");
  const std::string beluga = beluga_env ? beluga_env : "beluga-13b/ep1";
  const auto start = std::chrono::steady_clock::now();
  Check check;

  const Dataset data = IngestDataset(dir / "stories.csv", dir / "ratings.csv");
  const auto& t = data.ratings;
  if (!t.HasMeasure(beluga) || !t.HasMeasure(kHumanMeasureId)) {
    return {Verdict::kFail, "export lacks measure " + beluga + " or human"};
  }

  const std::map<Criterion, double> icc_expected = {
      {Criterion::kRelevance, 0.88}, {Criterion::kCoherence, 0.93}, {Criterion::kEmpathy, 0.88},
      {Criterion::kSurprise, 0.80},  {Criterion::kEngagement, 0.91}, {Criterion::kComplexity, 0.85}};
  for (const auto& [c, expected] : icc_expected) {
    const auto m = stats::BuildTryMatrix(t, beluga, c);
    check.Near(stats::Icc2k(m.matrix).icc, expected, 0.02,
               "beluga icc2k " + std::string(CriterionCode(c)));
  }

  const auto table = report::ReportMeanRatings(t, beluga);
  auto row_average = [&](const std::string& system) -> std::optional<double> {
    for (size_t r = 0; r < table.row_labels.size(); ++r) {
      if (table.row_labels[r] == system && table.cells[r].back()) {
        return table.cells[r].back()->value;
      }
    }
    return std::nullopt;
  };
  for (const auto& [system, expected] :
       std::vector<std::pair<std::string, double>>{{"Human", 3.42}, {"HINT", 1.49}}) {
    const auto avg = row_average(system);
    check.Expect(avg.has_value(), "mean-ratings row " + system + " present");
    if (avg) check.Near(*avg, expected, 0.02, "mean rating " + system);
  }

  double tau_sum = 0.0;
  for (Criterion c : kAllCriteria) {
    tau_sum += stats::SystemLevelCorrelation(t, kHumanMeasureId, beluga, c, c,
                                             stats::CoefficientKind::kKendall)
                   .value;
  }
  check.Near(tau_sum / kAllCriteria.size(), 0.70, 0.03, "system-level kendall (mean over criteria)");

  std::ifstream study_in(dir / "study.csv");
  if (!study_in) {
    check.Expect(false, "study.csv missing");
  } else {
    const auto judgments = study::ReadStudyCsv(study_in);
    const auto rates = study::ErrorRates(judgments);
    using C = study::ErrorCategory;
    const std::vector<std::tuple<C, double, double>> expected = {
        {C::kPoorSyntax, 0.02, 0.97},        {C::kIncoherence, 0.11, 0.81},
        {C::kWrongGuideline, 0.13, 0.90},    {C::kSuperfluousText, 0.20, 0.66},
        {C::kUnsubstantiatedClaims, 0.31, 0.60}};
    for (const auto& [category, rate, ac1] : expected) {
      const std::string name(study::CategoryLabel(category));
      check.Near(rates.rates.at(category), rate, 0.01, "error rate " + name);
      check.Near(study::GwetAc1(judgments, category).ac1, ac1, 0.03, "ac1 " + name);
    }
  }

  const double elapsed = Seconds(start);
  check.Expect(elapsed < 120.0, "runtime " + std::to_string(elapsed) + " s >= 120 s");
  return FromCheck(check);
}

// 3. Prompt golden files.
Outcome PromptGoldens(const Options& opt) {
  Check check;
  const auto rubrics = prompt::ReadGuidelinesFile(opt.data_dir / "fixtures" / "guidelines.txt");
  for (int v = 1; v <= 4; ++v) {
    for (Criterion c : kAllCriteria) {
      const std::string name = "ep" + std::to_string(v) + "_" + std::string(CriterionCode(c));
      const auto text = prompt::BuildEvalPrompt(fixtures::GoldenSpec(v, c, rubrics),
                                                fixtures::kDeathPrompt, fixtures::kDeathStory);
      check.Expect(text == ReadFile(opt.data_dir / "golden" / (name + ".txt")), name);
    }
  }
  const prompt::EvalPromptSpec mirror{prompt::PromptVariant::kWithExplanation,
                                      Criterion::kEmpathy, std::nullopt, std::nullopt};
  check.Expect(prompt::BuildEvalPrompt(mirror, fixtures::kMirrorPrompt, fixtures::kMirrorStory) ==
                   ReadFile(opt.data_dir / "golden" / "mirror_empathy_ep2.txt"),
               "mirror_empathy_ep2");
  const prompt::EvalPromptSpec surprise{prompt::PromptVariant::kWithGuidelines,
                                        Criterion::kSurprise,
                                        prompt::BuiltinGuidelines(Criterion::kSurprise),
                                        std::nullopt};
  const auto panel = prompt::BuildEvalPrompt(surprise, fixtures::kDeathPrompt,
                                             "You look up to see all [...]");
  check.Expect(panel.find("3 — The ending was predictable after half of the story.\n") !=
                   std::string::npos,
               "built-in Surprise rubric");
  return FromCheck(check);
}

// 4. Rating extraction over the synthetic answer corpus.
Outcome ExtractionRoundTrip(const Options&) {
  Check check;
  int recovered = 0;
  int total = 0;
  for (const auto& t : corpus::kTemplates) {
    for (int n = 1; n <= 5; ++n) {
      const auto answer = corpus::Fill(t.text, n);
      const auto r = prompt::ExtractRating(answer);
      ++total;
      const bool ok = r && r->rating == n;
      recovered += ok;
      check.Expect(ok, "not recovered: " + answer);
    }
  }
  int false_accepts = 0;
  for (const auto& answer : corpus::kNegatives) {
    const bool accepted = prompt::ExtractRating(answer).has_value();
    false_accepts += accepted;
    check.Expect(!accepted, "accepted: " + std::string(answer));
  }
  auto out = FromCheck(check);
  out.detail += "; recovered " + std::to_string(recovered) + "/" + std::to_string(total) +
                ", false accepts " + std::to_string(false_accepts) + "/" +
                std::to_string(corpus::kNegatives.size());
  return out;
}

// 5. Contamination kernel against oracles.
Outcome ContaminationKernel(const Options&) {
  using contamination::Membership;
  Check check;
  gen::Gen g(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> lp(g.Int(1, 200));
    for (auto& v : lp) v = -std::exp(g.Real(-6, 3));
    for (double k : {10.0, 20.0, 50.0, 100.0}) {
      check.Expect(contamination::MinKProb(lp, k) == oracle::MinKProb(lp, k), "min-k exact");
    }
  }
  for (int trial = 0; trial < 500; ++trial) {
    const size_t n = g.Int(2, 400);
    const bool ties = g.Coin();
    std::vector<double> s(n);
    std::vector<Membership> l(n), flipped(n);
    std::vector<bool> member(n);
    for (size_t i = 0; i < n; ++i) {
      member[i] = i == 0 || (i != 1 && g.Coin());
      l[i] = member[i] ? Membership::kMember : Membership::kNonMember;
      flipped[i] = member[i] ? Membership::kNonMember : Membership::kMember;
      s[i] = ties ? g.Int(0, 5) : g.Real(-3, 3) + (member[i] ? 0.4 : 0.0);
    }
    const double auc = contamination::RocAuc(s, l);
    check.Near(auc, oracle::RocAuc(s, member), 1e-12, "auc vs pair counting");
    check.Near(auc + contamination::RocAuc(s, flipped), 1.0, 1e-12, "auc flip identity");
    const std::vector<double> constant(n, 1.0);
    check.Expect(contamination::RocAuc(constant, l) == 0.5, "all-tied auc is 0.5");
  }
  return FromCheck(check);
}

// 6. Simulated raters: reliability falls with noise.
Outcome SimulatorMonotonicity(const Options&) {
  Check check;
  const std::vector<double> noise = {0.0, 0.5, 1.0, 2.0};
  std::vector<double> mean_icc(noise.size(), 0.0);
  constexpr int kSeeds = 100;
  for (uint64_t seed = 0; seed < kSeeds; ++seed) {
    const auto corpus = report::MakeSyntheticCorpus(16, {1, 2, 3, 4, 5}, 0.0, seed);
    for (size_t i = 0; i < noise.size(); ++i) {
      const auto t =
          report::SimulateRaters({corpus.true_quality, 0.0, noise[i], seed * 31 + i}, 3);
      double icc = 0.0;
      for (Criterion c : kAllCriteria) {
        icc += stats::Icc2k(stats::BuildTryMatrix(t, kHumanMeasureId, c).matrix).icc;
      }
      icc /= kAllCriteria.size();
      mean_icc[i] += icc / kSeeds;
      if (noise[i] != 0.0) continue;
      check.Expect(icc == 1.0, "zero-noise icc2k == 1");
      std::vector<double> truth, observed;
      for (const auto& [key, score] : Aggregate(t, kHumanMeasureId, Criterion::kRelevance)) {
        truth.push_back(corpus.true_quality.at({key, Criterion::kRelevance}));
        observed.push_back(score);
      }
      check.Expect(stats::Pearson(truth, observed) == 1.0, "zero-noise truth correlation == 1");
    }
  }
  std::ostringstream means;
  for (size_t i = 0; i < noise.size(); ++i) {
    means << (i ? ", " : "") << noise[i] << ":" << mean_icc[i];
    if (i > 0) check.Expect(mean_icc[i] < mean_icc[i - 1], "mean icc not strictly decreasing");
  }
  auto out = FromCheck(check);
  out.detail += "; mean icc2k by noise " + means.str();
  return out;
}

int RunCli(const Options& opt, const std::string& args) {
  const std::string cmd = "\"" + opt.cli.string() + "\" " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

// 7. Replay determinism through the command-line tool.
Outcome ReplayDeterminism(const Options& opt) {
  if (opt.cli.empty() || !fs::exists(opt.cli)) {
    return {Verdict::kNotRun, "--cli not given or missing"};
  }
  Check check;
  const fs::path fixture = opt.data_dir / "fixtures" / "replay";
  fs::remove_all(opt.work_dir);
  std::vector<std::pair<std::string, std::string>> runs;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = opt.work_dir / ("run" + std::to_string(run));
    fs::create_directories(dir);
    // A private copy keeps the committed cache untouched.
    fs::copy_file(fixture / "cache.jsonl", dir / "cache.jsonl");
    const int rc = RunCli(opt, "evaluate --stories \"" + (fixture / "stories.csv").string() +
                                   "\" --model fixture-judge --variant 1 --tries 3 --replay-only"
                                   " --cache \"" + (dir / "cache.jsonl").string() +
                                   "\" --out \"" + (dir / "tensor.csv").string() +
                                   "\" --report-out \"" + (dir / "report.txt").string() + "\"");
    check.Expect(rc == 0, "evaluate run " + std::to_string(run) + " exit " + std::to_string(rc));
    runs.emplace_back(ReadFile(dir / "tensor.csv"), ReadFile(dir / "report.txt"));
    check.Expect(ReadFile(dir / "cache.jsonl") == ReadFile(fixture / "cache.jsonl"),
                 "replay left the cache unchanged");
  }
  check.Expect(!runs[0].first.empty() && runs[0].first == runs[1].first, "tensors identical");
  check.Expect(!runs[0].second.empty() && runs[0].second == runs[1].second, "reports identical");
  // 9 stories x 6 criteria x 3 tries plus the header.
  check.Expect(std::count(runs[0].first.begin(), runs[0].first.end(), '\n') == 163,
               "tensor has 162 records");
  return FromCheck(check);
}

struct Criterion_ {
  int id;
  std::string name;
  std::function<Outcome(const Options&)> run;
};

int Main(int argc, char** argv) {
  Options opt;
  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto value = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << arg << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--criterion") {
      only = std::stoi(value());
    } else if (arg == "--data") {
      opt.data_dir = value();
    } else if (arg == "--cli") {
      opt.cli = value();
    } else if (arg == "--work") {
      opt.work_dir = value();
    } else {
      std::cerr << "unknown argument " << arg << "\n";
      return 2;
    }
  }

  const std::vector<Criterion_> criteria = {
      {1, "statistics oracle suite", StatisticsOracles},
      {2, "released-data reproduction", ReleasedData},
      {3, "prompt golden files", PromptGoldens},
      {4, "extraction round-trip", ExtractionRoundTrip},
      {5, "contamination kernel", ContaminationKernel},
      {6, "simulator monotonicity", SimulatorMonotonicity},
      {7, "replay determinism", ReplayDeterminism},
  };
  bool failed = false;
  bool not_run = false;
  for (const auto& c : criteria) {
    if (only && *only != c.id) continue;
    Outcome out;
    try {
      out = c.run(opt);
    } catch (const std::exception& e) {
      out = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const char* label = out.verdict == Verdict::kPass   ? "PASS"
                        : out.verdict == Verdict::kFail ? "FAIL"
                                                        : "NOT RUN";
    std::cout << label << "  criterion " << c.id << " (" << c.name << "): " << out.detail << "\n";
    failed |= out.verdict == Verdict::kFail;
    not_run |= out.verdict == Verdict::kNotRun;
  }
  return failed ? 1 : not_run ? 77 : 0;
}

}  // namespace
}  // namespace storyeval::acceptance

int main(int argc, char** argv) { return storyeval::acceptance::Main(argc, argv); }
