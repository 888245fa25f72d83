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

// Python bindings for the storyeval core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "storyeval/contamination/min_k_prob.h"
#include "storyeval/error.h"
#include "storyeval/ingest.h"
#include "storyeval/prompt/eval_prompt.h"
#include "storyeval/prompt/exchange.h"
#include "storyeval/prompt/rating_extraction.h"
#include "storyeval/report/reports.h"
#include "storyeval/stats/correlation.h"
#include "storyeval/stats/meta_evaluation.h"
#include "storyeval/stats/reliability.h"
#include "storyeval/stats/significance.h"
#include "storyeval/study/explanation_study.h"

namespace py = pybind11;
using namespace pybind11::literals;

namespace storyeval {
namespace {

Criterion ToCriterion(const std::string& text) {
  if (auto c = ParseCriterion(text)) return *c;
  throw py::value_error("unknown criterion: " + text);
}

stats::CoefficientKind ToKind(const std::string& text) {
  if (auto k = stats::ParseCoefficientKind(text)) return *k;
  throw py::value_error("unknown coefficient: " + text);
}

stats::Level ToLevel(const std::string& text) {
  if (auto l = stats::ParseLevel(text)) return *l;
  throw py::value_error("unknown level: " + text);
}

prompt::PromptVariant ToVariant(int number) {
  if (auto v = prompt::VariantFromNumber(number)) return *v;
  throw py::value_error("variant must be 1..4");
}

stats::RaterMatrix ToMatrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DataError("rating matrix is empty");
  const int raters = static_cast<int>(rows[0].size());
  std::vector<double> values;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != raters) throw DataError("rating matrix is ragged");
    values.insert(values.end(), row.begin(), row.end());
  }
  return stats::RaterMatrix(static_cast<int>(rows.size()), raters, std::move(values));
}

std::vector<contamination::Membership> ToLabels(const std::vector<bool>& is_member) {
  std::vector<contamination::Membership> out;
  out.reserve(is_member.size());
  for (bool m : is_member) {
    out.push_back(m ? contamination::Membership::kMember : contamination::Membership::kNonMember);
  }
  return out;
}

std::string FormName(prompt::ExtractionForm form) {
  switch (form) {
    case prompt::ExtractionForm::kRatingLabel:
      return "rating_label";
    case prompt::ExtractionForm::kRateA:
      return "rate_a";
    case prompt::ExtractionForm::kOutOfFive:
      return "out_of_five";
    case prompt::ExtractionForm::kStandalone:
      return "standalone";
  }
  return "";
}

}  // namespace
}  // namespace storyeval

PYBIND11_MODULE(_core, m) {
  using namespace storyeval;
  m.doc() = "Statistics, prompting and reporting core of storyeval.";

  auto data_error = py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<UndefinedCorrelationError>(m, "UndefinedCorrelationError",
                                                    data_error.ptr());
  py::register_exception<TransportError>(m, "TransportError", PyExc_RuntimeError);

  // Correlation.
  m.def("kendall_tau_b", [](const std::vector<double>& x, const std::vector<double>& y) {
    return stats::KendallTauB(x, y);
  }, "x"_a, "y"_a);
  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) {
    return stats::Pearson(x, y);
  }, "x"_a, "y"_a);
  m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) {
    return stats::Spearman(x, y);
  }, "x"_a, "y"_a);
  m.def("correlate", [](const std::vector<double>& x, const std::vector<double>& y,
                        const std::string& kind) {
    return stats::Correlate(x, y, ToKind(kind)).value;
  }, "x"_a, "y"_a, "kind"_a = "kendall");

  // Reliability and significance.
  m.def("icc2k", [](const std::vector<std::vector<double>>& rows) {
    const auto r = stats::Icc2k(ToMatrix(rows));
    return py::make_tuple(r.icc, py::make_tuple(r.ci95.first, r.ci95.second));
  }, "rows"_a, "ICC(2,k) of an items x raters matrix: (icc, (low, high)).");
  m.def("ci95_mean", [](const std::vector<double>& samples) {
    const auto ci = stats::Ci95Mean(samples);
    return py::make_tuple(ci.mean, ci.half_width);
  }, "samples"_a);
  m.def("williams_test", [](double r12, double r13, double r23, int n) {
    const auto w = stats::WilliamsTest(r12, r13, r23, n);
    return py::dict("t"_a = w.t, "df"_a = w.df, "p"_a = w.p_one_sided,
                    "determinant"_a = w.determinant_k);
  }, "r12"_a, "r13"_a, "r23"_a, "n"_a);
  m.def("bh_adjust", [](const std::vector<double>& p) { return stats::BhAdjust(p); },
        "p_values"_a);

  // Contamination.
  m.def("min_k_prob", [](const std::vector<double>& logprobs, double k) {
    return contamination::MinKProb(logprobs, k);
  }, "logprobs"_a, "k_percent"_a = 20.0);
  m.def("roc_auc", [](const std::vector<double>& scores, const std::vector<bool>& is_member) {
    return contamination::RocAuc(scores, ToLabels(is_member));
  }, "scores"_a, "is_member"_a);
  m.def("contamination_rate", [](const std::vector<double>& scores, double threshold) {
    return contamination::ContaminationRate(scores, threshold);
  }, "scores"_a, "threshold"_a);
  m.def("calibrate_threshold", [](const std::vector<double>& scores,
                                  const std::vector<bool>& is_member, double target_fpr) {
    return contamination::CalibrateThreshold(scores, ToLabels(is_member), target_fpr);
  }, "scores"_a, "is_member"_a, "target_fpr"_a);

  // Prompting.
  m.def("build_eval_prompt", [](int variant, const std::string& criterion,
                                const std::string& story_prompt, const std::string& story,
                                std::optional<std::vector<std::string>> guidelines,
                                std::optional<std::string> human_story) {
    prompt::EvalPromptSpec spec;
    spec.variant = ToVariant(variant);
    spec.criterion = ToCriterion(criterion);
    if (guidelines) {
      if (guidelines->size() != 5) throw py::value_error("guidelines need 5 entries");
      prompt::Guidelines g;
      std::copy(guidelines->begin(), guidelines->end(), g.begin());
      spec.guidelines = g;
    } else if (spec.variant == prompt::PromptVariant::kWithGuidelines) {
      spec.guidelines = prompt::BuiltinGuidelines(spec.criterion);
    }
    spec.human_story = std::move(human_story);
    try {
      return prompt::BuildEvalPrompt(spec, story_prompt, story);
    } catch (const std::invalid_argument& e) {
      throw py::value_error(e.what());
    }
  }, "variant"_a, "criterion"_a, "story_prompt"_a, "story"_a, "guidelines"_a = py::none(),
     "human_story"_a = py::none());
  m.def("extract_rating", [](const std::string& answer) -> py::object {
    const auto r = prompt::ExtractRating(answer);
    if (!r) return py::none();
    return py::make_tuple(r->rating, r->explanation, FormName(r->form));
  }, "answer"_a, "(rating, explanation, form) or None when no valid rating is found.");
  m.def("cache_key", [](const std::string& model, int variant, const std::string& criterion,
                        const std::string& story_prompt_id, const std::string& system_id,
                        int try_index) {
    return prompt::ComputeCacheKey(model, ToVariant(variant), ToCriterion(criterion),
                                   story_prompt_id, system_id, try_index);
  }, "model"_a, "variant"_a, "criterion"_a, "story_prompt_id"_a, "system_id"_a, "try_index"_a);

  // Agreement.
  m.def("gwet_ac1", [](const std::vector<std::pair<int, int>>& counts) {
    return study::Ac1FromCounts(counts);
  }, "counts"_a, "AC1 from per-item (yes, raters) counts.");

  // Datasets and reports.
  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("measure_ids", [](const Dataset& d) { return d.ratings.MeasureIds(); })
      .def_property_readonly("system_ids", &Dataset::SystemIds)
      .def_property_readonly("num_stories", [](const Dataset& d) { return d.stories.size(); })
      .def_property_readonly("num_ratings", [](const Dataset& d) { return d.ratings.size(); })
      .def("correlation", [](const Dataset& d, const std::string& measure_a,
                             const std::string& measure_b, const std::string& criterion,
                             const std::string& level, const std::string& kind) {
        const auto c = ToCriterion(criterion);
        return stats::Correlation(d.ratings, ToLevel(level), measure_a, measure_b,
                                  stats::EffectiveCriterion(d.ratings, measure_a, c),
                                  stats::EffectiveCriterion(d.ratings, measure_b, c),
                                  ToKind(kind))
            .value;
      }, "measure_a"_a, "measure_b"_a, "criterion"_a, "level"_a = "system",
         "kind"_a = "kendall")
      .def("mean_ratings_table", [](const Dataset& d, const std::string& measure,
                                    const std::string& format) {
        const auto t = report::ReportMeanRatings(d.ratings, measure);
        if (format == "text") return t.ToText();
        if (format == "csv") return t.ToCsv();
        throw py::value_error("format must be text or csv");
      }, "measure"_a, "format"_a = "text");
  m.def("ingest", [](const std::string& stories, const std::string& ratings) {
    return IngestDataset(std::filesystem::path(stories), std::filesystem::path(ratings));
  }, "stories_csv"_a, "ratings_csv"_a);
}
