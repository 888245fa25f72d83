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

// storyeval command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 transport error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "storyeval/csv.h"
#include "storyeval/config.h"
#include "storyeval/contamination/min_k_prob.h"
#include "storyeval/error.h"
#include "storyeval/ingest.h"
#include "storyeval/prompt/evaluation_runner.h"
#include "storyeval/report/reports.h"
#include "storyeval/report/simulator.h"
#include "storyeval/stats/meta_evaluation.h"
#include "storyeval/study/explanation_study.h"

namespace fs = std::filesystem;
using namespace storyeval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitTransport = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream OpenInput(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

void WriteFile(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("write failed for " + path.string());
}

// "-" or empty means stdout.
void Emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    WriteFile(out_path, content);
  }
}

RatingTensor LoadRatings(const std::vector<std::string>& paths) {
  RatingTensor merged;
  for (const auto& p : paths) {
    auto in = OpenInput(p);
    RatingTensor part;
    try {
      part = ReadRatings(in);
    } catch (const DataError& e) {
      throw DataError(p + ": " + e.what());
    }
    for (const auto& r : part.records()) merged.Add(r);
  }
  return merged;
}

std::vector<Criterion> ParseCriteria(const std::vector<std::string>& items) {
  std::vector<Criterion> out;
  for (const auto& s : items) {
    const auto c = ParseCriterion(s);
    if (!c) throw UsageError("unknown criterion '" + s + "'");
    if (std::find(out.begin(), out.end(), *c) == out.end()) out.push_back(*c);
  }
  if (out.empty()) out.assign(kAllCriteria.begin(), kAllCriteria.end());
  return out;
}

stats::Level ParseLevelOrThrow(const std::string& s) {
  const auto level = stats::ParseLevel(s);
  if (!level) throw UsageError("unknown level '" + s + "'");
  return *level;
}

stats::CoefficientKind ParseKindOrThrow(const std::string& s) {
  const auto kind = stats::ParseCoefficientKind(s);
  if (!kind) throw UsageError("unknown coefficient '" + s + "'");
  return *kind;
}

// Every measure except the human one, in tensor order.
std::vector<std::string> DefaultMeasures(const RatingTensor& tensor) {
  std::vector<std::string> out;
  for (auto& m : tensor.MeasureIds()) {
    if (m != kHumanMeasureId) out.push_back(std::move(m));
  }
  return out;
}

std::string Render(const report::ReportTable& table, const std::string& format) {
  if (format == "text") return table.ToText();
  if (format == "csv") return table.ToCsv();
  if (format == "full") return table.ToFullPrecisionCsv();
  if (format == "long") return table.ToLongCsv();
  throw UsageError("unknown format '" + format + "'");
}

void AddFormatOptions(CLI::App* cmd, std::string& format, std::string& out) {
  cmd->add_option("--format", format, "text, csv, full (full-precision csv) or long")
      ->check(CLI::IsMember({"text", "csv", "full", "long"}));
  cmd->add_option("--out,-o", out, "Output file (default stdout)");
}

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string stories;
  std::vector<std::string> ratings;
  std::string out_dir;
};

int RunIngest(const IngestArgs& a) {
  auto stories_in = OpenInput(a.stories);
  Dataset ds;
  ds.stories = ReadStories(stories_in);
  std::set<StoryKey> known;
  for (const auto& s : ds.stories) known.insert(s.key());
  ds.ratings = LoadRatings(a.ratings);
  for (const auto& r : ds.ratings.records()) {
    if (!known.count(r.story_key())) {
      throw DataError("rating references unknown story (" + r.story_prompt_id + ", " +
                      r.system_id + ")");
    }
  }
  std::cout << "stories " << ds.stories.size() << "\n"
            << "systems " << ds.SystemIds().size() << "\n"
            << "ratings " << ds.ratings.size() << "\n";
  for (const auto& m : ds.ratings.MeasureIds()) {
    std::cout << "measure " << m << " "
              << ds.ratings.Select({.measure_id = m}).size() << "\n";
  }
  if (!a.out_dir.empty()) {
    std::ostringstream s, r;
    WriteStories(s, ds.stories);
    WriteRatings(r, ds.ratings);
    WriteFile(fs::path(a.out_dir) / "stories.csv", s.str());
    WriteFile(fs::path(a.out_dir) / "ratings.csv", r.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string stories;
  std::string config;
  std::string model;
  int variant = 1;
  std::vector<std::string> criteria;
  std::optional<int> tries;
  std::string endpoint;
  std::string api;
  std::string api_key_env;
  std::string cache;
  bool replay_only = false;
  std::string guidelines;
  std::optional<int> parallelism;
  std::optional<double> temperature;
  std::optional<double> top_p;
  std::optional<int> max_tokens;
  std::string out;
  std::string report_out;
  std::string failures_out;
};

int RunEvaluate(const EvaluateArgs& a) {
  Config cfg;
  if (!a.config.empty()) cfg = Config::Load(a.config);

  prompt::EvaluationOptions opt;
  opt.model_id = !a.model.empty() ? a.model : cfg.GetString("model.id").value_or("");
  if (opt.model_id.empty()) throw UsageError("--model (or model.id in the config) is required");
  const auto variant = prompt::VariantFromNumber(a.variant);
  if (!variant) throw UsageError("--variant must be 1..4");
  opt.variant = *variant;
  opt.criteria = ParseCriteria(a.criteria);
  opt.tries = a.tries.value_or(static_cast<int>(cfg.GetInt("run.tries").value_or(3)));
  opt.parallelism =
      a.parallelism.value_or(static_cast<int>(cfg.GetInt("run.parallelism").value_or(4)));
  opt.max_attempts = static_cast<int>(cfg.GetInt("run.max_attempts").value_or(opt.max_attempts));
  opt.transport_retries =
      static_cast<int>(cfg.GetInt("run.transport_retries").value_or(opt.transport_retries));
  opt.retry_backoff_ms =
      static_cast<int>(cfg.GetInt("run.retry_backoff_ms").value_or(opt.retry_backoff_ms));
  opt.replay_only = a.replay_only || cfg.GetBool("run.replay_only").value_or(false);
  if (opt.tries < 1 || opt.parallelism < 1 || opt.max_attempts < 1) {
    throw UsageError("tries, parallelism and max_attempts must be positive");
  }

  opt.sampling = prompt::SamplingParams::DefaultsFor(opt.model_id);
  opt.sampling.temperature =
      a.temperature.value_or(cfg.GetDouble("sampling.temperature").value_or(opt.sampling.temperature));
  opt.sampling.top_p = a.top_p.value_or(cfg.GetDouble("sampling.top_p").value_or(opt.sampling.top_p));
  opt.sampling.max_tokens = a.max_tokens.value_or(
      static_cast<int>(cfg.GetInt("sampling.max_tokens").value_or(opt.sampling.max_tokens)));
  try {
    opt.sampling.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const std::string guidelines_path =
      !a.guidelines.empty() ? a.guidelines : cfg.GetString("prompt.guidelines").value_or("");
  if (!guidelines_path.empty()) {
    try {
      opt.guidelines = prompt::ReadGuidelinesFile(guidelines_path);
    } catch (const std::invalid_argument& e) {
      throw DataError(guidelines_path + ": " + e.what());
    }
  }

  auto stories_in = OpenInput(a.stories);
  const auto stories = ReadStories(stories_in);

  const std::string cache_path =
      !a.cache.empty() ? a.cache : cfg.GetString("cache.path").value_or("");
  std::unique_ptr<prompt::ExchangeCache> cache;
  if (cache_path.empty()) {
    cache = std::make_unique<prompt::ExchangeCache>();
  } else {
    // A directory holds exchanges.jsonl; anything else is the file itself.
    fs::path file(cache_path);
    if (fs::is_directory(file) || cache_path.back() == '/') file /= "exchanges.jsonl";
    cache = std::make_unique<prompt::ExchangeCache>(file);
  }

  std::unique_ptr<prompt::ModelClient> client;
  if (!opt.replay_only) {
    const std::string url =
        !a.endpoint.empty() ? a.endpoint : cfg.GetString("endpoint.url").value_or("");
    if (url.empty()) throw UsageError("--endpoint (or endpoint.url) is required unless --replay-only");
    const std::string api = !a.api.empty() ? a.api : cfg.GetString("endpoint.api").value_or("contract");
    const int timeout = static_cast<int>(cfg.GetInt("endpoint.timeout_seconds").value_or(120));
    try {
      if (api == "contract") {
        client = std::make_unique<prompt::HttpModelClient>(url, timeout);
      } else if (api == "chat") {
        const std::string key_env =
            !a.api_key_env.empty() ? a.api_key_env
                                   : cfg.GetString("endpoint.api_key_env").value_or("");
        std::string key;
        if (!key_env.empty()) {
          const char* v = std::getenv(key_env.c_str());
          if (v == nullptr) throw UsageError("environment variable " + key_env + " is not set");
          key = v;
        }
        client = std::make_unique<prompt::ChatCompletionsClient>(url, key, timeout);
      } else {
        throw UsageError("unknown api '" + api + "' (contract or chat)");
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  const auto result = prompt::RunEvaluation(stories, client.get(), *cache, opt);

  std::ostringstream ratings;
  WriteRatings(ratings, result.ratings);
  Emit(a.out, ratings.str());

  if (!a.report_out.empty()) {
    const std::string measure = LlmMeasureId(opt.model_id, a.variant);
    std::string text;
    if (result.ratings.HasMeasure(measure)) {
      text = report::ReportMeanRatings(result.ratings, measure, opt.criteria).ToText();
    }
    WriteFile(a.report_out, text);
  }
  if (!a.failures_out.empty()) {
    std::ostringstream f;
    csv::WriteRow(f, {"story_prompt_id", "system_id", "criterion", "try_index", "status", "detail"});
    for (const auto& c : result.failures) {
      csv::WriteRow(f, {c.story.story_prompt_id, c.story.system_id,
                        std::string(CriterionCode(c.criterion)), std::to_string(c.try_index),
                        std::string(prompt::StatusName(c.status)), c.detail});
    }
    WriteFile(a.failures_out, f.str());
  }
  std::cerr << "records " << result.ratings.size() << ", failures " << result.failures.size()
            << ", network requests " << result.network_requests << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- analysis

struct TableArgs {
  std::vector<std::string> ratings;
  std::vector<std::string> measures;
  std::vector<std::string> criteria;
  std::string level = "system";
  std::string kind = "kendall";
  std::string format = "text";
  std::string out;
  bool human_baseline = false;
};

int RunCorrelate(const TableArgs& a) {
  const auto tensor = LoadRatings(a.ratings);
  const auto measures = a.measures.empty() ? DefaultMeasures(tensor) : a.measures;
  if (!tensor.HasMeasure(kHumanMeasureId)) throw DataError("no human ratings to correlate with");
  const auto table = report::ReportCorrelationHeatmap(
      tensor, measures, ParseLevelOrThrow(a.level), ParseKindOrThrow(a.kind), a.human_baseline);
  Emit(a.out, Render(table, a.format));
  return kExitOk;
}

int RunIcc(const TableArgs& a) {
  const auto tensor = LoadRatings(a.ratings);
  const auto measures = a.measures.empty() ? tensor.MeasureIds() : a.measures;
  for (const auto& m : measures) {
    if (!tensor.HasMeasure(m)) throw DataError("measure " + m + " not in ratings");
  }
  Emit(a.out, Render(report::ReportIcc(tensor, measures, ParseCriteria(a.criteria)), a.format));
  return kExitOk;
}

struct WilliamsArgs {
  TableArgs table;
  std::string reference;
  bool bh = false;
};

int RunWilliams(const WilliamsArgs& a) {
  const auto tensor = LoadRatings(a.table.ratings);
  if (!tensor.HasMeasure(a.reference)) throw DataError("measure " + a.reference + " not in ratings");
  std::vector<std::string> competitors = a.table.measures;
  if (competitors.empty()) {
    for (auto& m : DefaultMeasures(tensor)) {
      if (m != a.reference) competitors.push_back(std::move(m));
    }
  }
  const auto level = ParseLevelOrThrow(a.table.level);
  auto result = stats::WilliamsMatrix(tensor, a.reference, competitors,
                                      ParseCriteria(a.table.criteria), level,
                                      ParseKindOrThrow(a.table.kind));
  if (!a.bh) {
    for (auto& row : result.cells) {
      for (auto& cell : row) {
        if (cell) cell->p_adjusted = cell->test.p_one_sided;
      }
    }
  }
  auto table = report::ReportWilliams(result, a.reference, level);
  if (!a.bh) table.caption = "Unadjusted" + table.caption.substr(table.caption.find(" p-values"));
  Emit(a.table.out, Render(table, a.table.format));
  return kExitOk;
}

struct StudyArgs {
  std::string study;
  int resamples = study::kBootstrapResamples;
  uint64_t seed = study::kBootstrapSeed;
  std::string exchanges;
  int variant = 2;
  std::string format = "text";
  std::string out;
};

int RunStudy(const StudyArgs& a) {
  auto in = OpenInput(a.study);
  const auto judgments = study::ReadStudyCsv(in);
  const auto rates = study::ErrorRates(judgments);
  std::map<study::ErrorCategory, study::Ac1Result> ac1;
  for (auto c : study::kAllCategories) ac1[c] = study::GwetAc1(judgments, c, a.resamples, a.seed);
  auto table = report::ReportStudy(rates, ac1);
  table.decimals = 3;
  std::string content = Render(table, a.format);
  if (!a.exchanges.empty()) {
    const auto variant = prompt::VariantFromNumber(a.variant);
    if (!variant) throw UsageError("--variant must be 1..4");
    auto log = OpenInput(a.exchanges);
    std::vector<prompt::LlmExchange> exchanges;
    std::string line;
    int line_no = 0;
    while (std::getline(log, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        exchanges.push_back(prompt::ExchangeFromJson(nlohmann::json::parse(line)));
      } catch (const std::exception& e) {
        throw DataError(a.exchanges + " line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    std::ostringstream extra;
    extra << "no_explanation_rate,"
          << FormatScore(study::NoExplanationRate(exchanges, *variant)) << "\n";
    content += (a.format == "text" ? "\n" : "") + extra.str();
  }
  for (const auto& [id, n] : rates.incomplete) {
    std::cerr << "warning: explanation " << id << " has " << n << " raters\n";
  }
  Emit(a.out, content);
  return kExitOk;
}

// ---------------------------------------------------------------- contamination

struct ContaminationArgs {
  std::string logprobs;
  double k = 20.0;
  std::optional<double> threshold;
  std::optional<double> target_fpr;
  std::string out;
};

std::vector<contamination::TokenLogProbSequence> LoadLogProbs(const std::string& path) {
  auto in = OpenInput(path);
  try {
    return contamination::ReadLogProbsJsonl(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

int RunContaminationScore(const ContaminationArgs& a) {
  std::ostringstream out;
  csv::WriteRow(out, {"doc_id", "label", "min_k_prob"});
  for (const auto& doc : LoadLogProbs(a.logprobs)) {
    std::string label;
    if (doc.label) label = *doc.label == contamination::Membership::kMember ? "member" : "non-member";
    csv::WriteRow(out, {doc.doc_id, label, FormatScore(contamination::MinKProb(doc.logprobs, a.k))});
  }
  Emit(a.out, out.str());
  return kExitOk;
}

void ScoresAndLabels(const std::vector<contamination::TokenLogProbSequence>& docs, double k,
                     std::vector<double>& scores, std::vector<contamination::Membership>& labels) {
  for (const auto& doc : docs) {
    if (!doc.label) continue;
    scores.push_back(contamination::MinKProb(doc.logprobs, k));
    labels.push_back(*doc.label);
  }
}

int RunContaminationAuc(const ContaminationArgs& a) {
  std::vector<double> scores;
  std::vector<contamination::Membership> labels;
  ScoresAndLabels(LoadLogProbs(a.logprobs), a.k, scores, labels);
  std::ostringstream out;
  out << "auc," << FormatScore(contamination::RocAuc(scores, labels)) << "\n";
  if (a.target_fpr) {
    out << "threshold,"
        << FormatScore(contamination::CalibrateThreshold(scores, labels, *a.target_fpr)) << "\n";
  }
  Emit(a.out, out.str());
  return kExitOk;
}

int RunContaminationRate(const ContaminationArgs& a) {
  const auto docs = LoadLogProbs(a.logprobs);
  double threshold = 0.0;
  if (a.threshold) {
    threshold = *a.threshold;
  } else if (a.target_fpr) {
    std::vector<double> s;
    std::vector<contamination::Membership> l;
    ScoresAndLabels(docs, a.k, s, l);
    threshold = contamination::CalibrateThreshold(s, l, *a.target_fpr);
  } else {
    throw UsageError("rate needs --threshold or --target-fpr");
  }
  std::vector<double> scores;
  for (const auto& doc : docs) scores.push_back(contamination::MinKProb(doc.logprobs, a.k));
  std::ostringstream out;
  out << "threshold," << FormatScore(threshold) << "\n"
      << "rate," << FormatScore(contamination::ContaminationRate(scores, threshold)) << "\n";
  Emit(a.out, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  int prompts = 16;
  std::string levels = "1.5,2.5,3.0,3.5,4.5";
  double spread = 0.5;
  int raters = 3;
  double noise_sd = 0.5;
  double bias_sd = 0.2;
  uint64_t seed = 1;
  std::string measure = std::string(kHumanMeasureId);
  std::string out_dir;
};

int RunSimulate(const SimulateArgs& a) {
  if (a.prompts < 1 || a.raters < 1) throw UsageError("--prompts and --raters must be positive");
  const auto corpus = report::MakeSyntheticCorpus(a.prompts, ParseDoubleList(a.levels), a.spread,
                                                  a.seed);
  report::SimulatedRaterConfig config;
  config.true_quality = corpus.true_quality;
  config.noise_sd = a.noise_sd;
  config.rater_bias_sd = a.bias_sd;
  config.seed = a.seed;
  RatingTensor tensor;
  try {
    tensor = report::SimulateRaters(config, a.raters, a.measure);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream stories, ratings, truth;
  WriteStories(stories, corpus.stories);
  WriteRatings(ratings, tensor);
  csv::WriteRow(truth, {"story_prompt_id", "system_id", "criterion", "quality"});
  for (const auto& [key, q] : corpus.true_quality) {
    csv::WriteRow(truth, {key.first.story_prompt_id, key.first.system_id,
                          std::string(CriterionCode(key.second)), FormatScore(q)});
  }
  const fs::path dir = a.out_dir.empty() ? fs::path(".") : fs::path(a.out_dir);
  WriteFile(dir / "stories.csv", stories.str());
  WriteFile(dir / "ratings.csv", ratings.str());
  WriteFile(dir / "truth.csv", truth.str());
  return kExitOk;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> ratings;
  std::vector<std::string> measures;
  std::string kind = "kendall";
  std::string out_dir;
  bool plot_data = false;
};

std::string FileSafe(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  }
  return s;
}

void WriteTable(const fs::path& dir, const std::string& stem, const report::ReportTable& t,
                bool plot_data) {
  WriteFile(dir / (stem + ".txt"), t.ToText());
  WriteFile(dir / (stem + ".csv"), t.ToCsv());
  WriteFile(dir / (stem + "_full.csv"), t.ToFullPrecisionCsv());
  if (plot_data) WriteFile(dir / (stem + "_long.csv"), t.ToLongCsv());
}

int RunReport(const ReportArgs& a) {
  if (a.out_dir.empty()) throw UsageError("--out-dir is required");
  const auto tensor = LoadRatings(a.ratings);
  const auto kind = ParseKindOrThrow(a.kind);
  const fs::path dir(a.out_dir);
  const auto measures = a.measures.empty() ? tensor.MeasureIds() : a.measures;
  std::vector<std::string> likert;
  for (const auto& m : measures) {
    if (!tensor.HasMeasure(m)) throw DataError("measure " + m + " not in ratings");
    if (ClassifyMeasure(m) != MeasureKind::kAutomatic) likert.push_back(m);
  }
  for (const auto& m : likert) {
    WriteTable(dir, "mean_ratings_" + FileSafe(m), report::ReportMeanRatings(tensor, m), a.plot_data);
  }
  if (!likert.empty()) WriteTable(dir, "icc", report::ReportIcc(tensor, likert), a.plot_data);
  if (tensor.HasMeasure(kHumanMeasureId)) {
    std::vector<std::string> others;
    for (const auto& m : measures) {
      if (m != kHumanMeasureId) others.push_back(m);
    }
    for (auto level : {stats::Level::kOverall, stats::Level::kSystem}) {
      WriteTable(dir, "correlation_" + std::string(stats::LevelName(level)),
                 report::ReportCorrelationHeatmap(tensor, others, level, kind, true), a.plot_data);
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meta-evaluation toolkit for LLM-as-judge story evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "storyeval 0.1.0");

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate and normalize stories and ratings");
  c_ingest->add_option("--stories", ingest.stories, "stories.csv")->required()->check(CLI::ExistingFile);
  c_ingest->add_option("--ratings", ingest.ratings, "ratings.csv (repeatable)")->required();
  c_ingest->add_option("--out-dir", ingest.out_dir, "Write normalized stories.csv and ratings.csv");

  EvaluateArgs eval;
  auto* c_eval = app.add_subcommand("evaluate", "Rate stories with an LLM judge");
  c_eval->add_option("--stories", eval.stories, "stories.csv")->required()->check(CLI::ExistingFile);
  c_eval->add_option("--config", eval.config, "TOML-style config file")->check(CLI::ExistingFile);
  c_eval->add_option("--model", eval.model, "Judge model id");
  c_eval->add_option("--variant", eval.variant, "Eval-Prompt variant 1..4")->check(CLI::Range(1, 4));
  c_eval->add_option("--criteria", eval.criteria, "Criterion codes or names (default all)")
      ->delimiter(',');
  c_eval->add_option("--tries", eval.tries, "Independent generations per cell");
  c_eval->add_option("--endpoint", eval.endpoint, "Model endpoint URL");
  c_eval->add_option("--api", eval.api, "Endpoint dialect: contract or chat");
  c_eval->add_option("--api-key-env", eval.api_key_env, "Environment variable holding the API key");
  c_eval->add_option("--cache", eval.cache, "Exchange cache directory or .jsonl file");
  c_eval->add_flag("--replay-only", eval.replay_only, "Use only cached exchanges");
  c_eval->add_option("--guidelines", eval.guidelines, "Guidelines file for variant 3")
      ->check(CLI::ExistingFile);
  c_eval->add_option("--parallelism", eval.parallelism, "Concurrent requests");
  c_eval->add_option("--temperature", eval.temperature);
  c_eval->add_option("--top-p", eval.top_p);
  c_eval->add_option("--max-tokens", eval.max_tokens);
  c_eval->add_option("--out,-o", eval.out, "ratings.csv to write (default stdout)");
  c_eval->add_option("--report-out", eval.report_out, "Mean-ratings table to write");
  c_eval->add_option("--failures-out", eval.failures_out, "Failed cells CSV to write");

  TableArgs corr;
  auto* c_corr = app.add_subcommand("correlate", "Correlations with averaged human ratings");
  c_corr->add_option("--ratings", corr.ratings, "ratings.csv (repeatable)")->required();
  c_corr->add_option("--measure", corr.measures, "Measures to compare (default all non-human)");
  c_corr->add_option("--level", corr.level, "overall or system")
      ->check(CLI::IsMember({"overall", "system"}));
  c_corr->add_option("--kind", corr.kind, "pearson, spearman or kendall")
      ->check(CLI::IsMember({"pearson", "spearman", "kendall"}));
  c_corr->add_flag("--human-baseline", corr.human_baseline, "Add the rater-vs-mean column");
  AddFormatOptions(c_corr, corr.format, corr.out);

  TableArgs icc;
  auto* c_icc = app.add_subcommand("icc", "ICC2k across tries or raters");
  c_icc->add_option("--ratings", icc.ratings, "ratings.csv (repeatable)")->required();
  c_icc->add_option("--measure", icc.measures, "Measures (default all)");
  c_icc->add_option("--criteria", icc.criteria)->delimiter(',');
  AddFormatOptions(c_icc, icc.format, icc.out);

  WilliamsArgs will;
  auto* c_will = app.add_subcommand("williams", "Williams tests of a reference measure");
  c_will->add_option("--ratings", will.table.ratings, "ratings.csv (repeatable)")->required();
  c_will->add_option("--reference", will.reference, "Reference measure")->required();
  c_will->add_option("--measure", will.table.measures, "Competitors (default all others)");
  c_will->add_option("--criteria", will.table.criteria)->delimiter(',');
  c_will->add_option("--level", will.table.level)->check(CLI::IsMember({"overall", "system"}));
  c_will->add_option("--kind", will.table.kind)
      ->check(CLI::IsMember({"pearson", "spearman", "kendall"}));
  c_will->add_flag("--bh", will.bh, "Benjamini-Hochberg adjustment");
  AddFormatOptions(c_will, will.table.format, will.table.out);

  StudyArgs st;
  auto* c_study = app.add_subcommand("study", "Explanation error rates and agreement");
  c_study->add_option("--study", st.study, "study.csv")->required()->check(CLI::ExistingFile);
  c_study->add_option("--resamples", st.resamples, "Bootstrap resamples")->check(CLI::PositiveNumber);
  c_study->add_option("--seed", st.seed, "Bootstrap seed");
  c_study->add_option("--exchanges", st.exchanges, "Exchange log for the no-explanation rate")
      ->check(CLI::ExistingFile);
  c_study->add_option("--variant", st.variant, "Variant for the no-explanation rate");
  AddFormatOptions(c_study, st.format, st.out);

  ContaminationArgs cont;
  auto* c_cont = app.add_subcommand("contamination", "Min-K% Prob membership inference");
  c_cont->require_subcommand(1);
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--logprobs", cont.logprobs, "logprobs.jsonl")->required()->check(CLI::ExistingFile);
    cmd->add_option("--k", cont.k, "Percent of least likely tokens")->check(CLI::Range(0.0, 100.0));
    cmd->add_option("--out,-o", cont.out);
  };
  auto* c_score = c_cont->add_subcommand("score", "Min-K% Prob per document");
  add_common(c_score);
  auto* c_auc = c_cont->add_subcommand("auc", "ROC AUC on labeled documents");
  add_common(c_auc);
  c_auc->add_option("--target-fpr", cont.target_fpr, "Also report the calibrated threshold")
      ->check(CLI::Range(0.0, 1.0));
  auto* c_rate = c_cont->add_subcommand("rate", "Fraction of documents flagged as seen");
  add_common(c_rate);
  c_rate->add_option("--threshold", cont.threshold);
  c_rate->add_option("--target-fpr", cont.target_fpr)->check(CLI::Range(0.0, 1.0));

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Synthetic corpus with simulated raters");
  c_sim->add_option("--prompts", sim.prompts);
  c_sim->add_option("--levels", sim.levels, "Comma-separated system quality levels");
  c_sim->add_option("--spread", sim.spread);
  c_sim->add_option("--raters", sim.raters);
  c_sim->add_option("--noise-sd", sim.noise_sd);
  c_sim->add_option("--bias-sd", sim.bias_sd);
  c_sim->add_option("--seed", sim.seed);
  c_sim->add_option("--measure", sim.measure);
  c_sim->add_option("--out-dir", sim.out_dir);

  ReportArgs rep;
  auto* c_rep = app.add_subcommand("report", "Write every report table");
  c_rep->add_option("--ratings", rep.ratings, "ratings.csv (repeatable)")->required();
  c_rep->add_option("--measure", rep.measures);
  c_rep->add_option("--kind", rep.kind)->check(CLI::IsMember({"pearson", "spearman", "kendall"}));
  c_rep->add_option("--out-dir", rep.out_dir)->required();
  c_rep->add_flag("--plot-data", rep.plot_data, "Also write long-format CSV for plotting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_ingest->parsed()) return RunIngest(ingest);
    if (c_eval->parsed()) return RunEvaluate(eval);
    if (c_corr->parsed()) return RunCorrelate(corr);
    if (c_icc->parsed()) return RunIcc(icc);
    if (c_will->parsed()) return RunWilliams(will);
    if (c_study->parsed()) return RunStudy(st);
    if (c_score->parsed()) return RunContaminationScore(cont);
    if (c_auc->parsed()) return RunContaminationAuc(cont);
    if (c_rate->parsed()) return RunContaminationRate(cont);
    if (c_sim->parsed()) return RunSimulate(sim);
    if (c_rep->parsed()) return RunReport(rep);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const prompt::EvaluationAborted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.transport() ? kExitTransport : kExitData;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
