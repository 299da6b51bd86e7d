// Copyright 2026 The QuickCue Authors
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

#include "quickcue/eval.hpp"

#include <cstdio>
#include <set>

#include "quickcue/error.hpp"
#include "quickcue/log.hpp"

namespace quickcue {
namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pair_key(AspectSentimentPair p) {
  return "[" + std::string(display(p.aspect)) + ", " + std::string(display(p.sentiment)) + "]";
}

Json metrics_to_json(const ReviewMetrics& m) {
  return Json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

Json frequency_to_json(const PairFrequency& freq) {
  Json out = Json::array();
  for (const auto& p : kFrequencyTableOrder) {
    out.push_back(Json{{"aspect", display(p.aspect)},
                       {"sentiment", display(p.sentiment)},
                       {"count", freq[p.index()]}});
  }
  return out;
}

const Json& require(const Json& obj, const char* field, const std::string& path) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw SchemaError(path.empty() ? field : path + "." + field, "missing required field");
  }
  return obj[field];
}

std::string require_string(const Json& obj, const char* field, const std::string& path) {
  const Json& v = require(obj, field, path);
  if (!v.is_string()) throw SchemaError(path + "." + field, "expected a string");
  return v.get<std::string>();
}

}  // namespace

const std::array<AspectSentimentPair, kPairCount> kFrequencyTableOrder = {{
    {Aspect::kFood, Sentiment::kNegative},
    {Aspect::kFood, Sentiment::kPositive},
    {Aspect::kCustomerService, Sentiment::kNegative},
    {Aspect::kCustomerService, Sentiment::kPositive},
    {Aspect::kPricing, Sentiment::kNegative},
    {Aspect::kPricing, Sentiment::kPositive},
    {Aspect::kAmbiance, Sentiment::kNegative},
    {Aspect::kAmbiance, Sentiment::kPositive},
    {Aspect::kHygiene, Sentiment::kNegative},
    {Aspect::kHygiene, Sentiment::kPositive},
}};

ReviewMetrics per_review_prf(const PairSet& predicted, const PairSet& gold) {
  if (predicted.empty() && gold.empty()) return {1.0, 1.0, 1.0};
  if (predicted.empty() || gold.empty()) return {0.0, 0.0, 0.0};
  const double tp = static_cast<double>((predicted & gold).size());
  ReviewMetrics m;
  m.precision = tp / static_cast<double>(predicted.size());
  m.recall = tp / static_cast<double>(gold.size());
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

ReviewMetrics macro_average(std::span<const ReviewMetrics> per_review) {
  if (per_review.empty()) throw Error(ErrorCode::kEmptyDataset, "no reviews to average");
  ReviewMetrics sum;
  for (const auto& m : per_review) {
    sum.precision += m.precision;
    sum.recall += m.recall;
    sum.f1 += m.f1;
  }
  const double n = static_cast<double>(per_review.size());
  return {sum.precision / n, sum.recall / n, sum.f1 / n};
}

PairFrequency pair_frequency(std::span<const PairSet> sets) {
  PairFrequency freq{};
  for (const auto& s : sets) {
    for (const auto& p : s.to_vector()) ++freq[p.index()];
  }
  return freq;
}

ClassifierReport evaluate_classifier(std::span<const GoldAnnotation> gold,
                                     const std::map<std::string, PairSet>& predictions) {
  if (gold.empty()) throw Error(ErrorCode::kEmptyDataset, "gold set is empty");
  ClassifierReport report;
  std::set<std::string> seen;
  std::vector<ReviewMetrics> metrics;
  std::vector<PairSet> gold_sets;
  std::vector<PairSet> predicted_sets;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto& g = gold[i];
    if (!seen.insert(g.review_id).second) {
      throw SchemaError("[" + std::to_string(i) + "].review_id",
                        "duplicate gold review id " + g.review_id);
    }
    PairSet predicted;
    if (auto it = predictions.find(g.review_id); it != predictions.end()) {
      predicted = it->second;
    } else {
      report.missing_predictions.push_back(g.review_id);
      logger()->warn("no prediction for gold review {}; scoring it as empty", g.review_id);
    }
    const ReviewMetrics m = per_review_prf(predicted, g.gold_pairs);
    metrics.push_back(m);
    report.per_review.emplace_back(g.review_id, m);
    gold_sets.push_back(g.gold_pairs);
    predicted_sets.push_back(predicted);
  }
  report.macro = macro_average(metrics);
  report.gold_frequency = pair_frequency(gold_sets);
  report.predicted_frequency = pair_frequency(predicted_sets);
  return report;
}

AnnotationAggregate aggregate_annotations(std::span<const AnnotationScore> scores) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyDataset, "no annotation scores");
  struct Acc {
    double factuality = 0;
    double noisiness = 0;
    int count = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Acc> per_example;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto& s = scores[i];
    const std::string path = "[" + std::to_string(i) + "]";
    if (s.factuality < 1 || s.factuality > 10) {
      throw SchemaError(path + ".factuality", "score must be within 1..10");
    }
    if (s.noisiness < 1 || s.noisiness > 10) {
      throw SchemaError(path + ".noisiness", "score must be within 1..10");
    }
    if (!seen.emplace(s.example_id, s.annotator_id).second) {
      throw Error(ErrorCode::kDuplicateScore, "annotator " + s.annotator_id +
                                                  " scored example " + s.example_id + " twice");
    }
    auto [it, inserted] = per_example.try_emplace(s.example_id);
    if (inserted) order.push_back(s.example_id);
    it->second.factuality += s.factuality;
    it->second.noisiness += s.noisiness;
    ++it->second.count;
  }
  AnnotationAggregate out;
  for (const auto& id : order) {
    const Acc& a = per_example[id];
    out.factuality += a.factuality / a.count;
    out.noisiness += a.noisiness / a.count;
  }
  const double n = static_cast<double>(order.size());
  out.factuality /= n;
  out.noisiness /= n;
  return out;
}

std::vector<GoldAnnotation> gold_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("", "gold file must be an array");
  std::vector<GoldAnnotation> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "[" + std::to_string(i) + "]";
    GoldAnnotation g;
    g.review_id = require_string(j[i], "review_id", path);
    g.gold_pairs = pairs_from_json(require(j[i], "pairs", path), path + ".pairs");
    out.push_back(std::move(g));
  }
  return out;
}

std::map<std::string, PairSet> predictions_from_json(const Json& j) {
  const Json* arr = &j;
  std::string prefix;
  std::string id_field = "review_id";
  if (j.is_object()) {
    arr = &require(j, "classifications", "");
    prefix = "classifications";
  }
  if (!arr->is_array()) throw SchemaError(prefix, "predictions must be an array");
  std::map<std::string, PairSet> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const std::string path = prefix + "[" + std::to_string(i) + "]";
    const Json& rec = (*arr)[i];
    const std::string id = require_string(rec, id_field.c_str(), path);
    PairSet pairs = pairs_from_json(require(rec, "pairs", path), path + ".pairs");
    if (!out.emplace(id, pairs).second) {
      throw SchemaError(path + ".review_id", "duplicate prediction for review " + id);
    }
  }
  return out;
}

std::vector<AnnotationScore> annotations_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("", "annotation file must be an array");
  std::vector<AnnotationScore> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "[" + std::to_string(i) + "]";
    AnnotationScore s;
    s.example_id = require_string(j[i], "example_id", path);
    s.annotator_id = require_string(j[i], "annotator_id", path);
    for (auto [field, dst] : {std::pair{"factuality", &s.factuality},
                              std::pair{"noisiness", &s.noisiness}}) {
      const Json& v = require(j[i], field, path);
      if (!v.is_number_integer()) {
        throw SchemaError(path + "." + field, "expected an integer score");
      }
      *dst = v.get<int>();
    }
    out.push_back(std::move(s));
  }
  return out;
}

Json report_to_json(const ClassifierReport& report) {
  Json per_review = Json::array();
  for (const auto& [id, m] : report.per_review) {
    Json row{{"review_id", id}};
    row.update(metrics_to_json(m));
    per_review.push_back(std::move(row));
  }
  return Json{{"macro", metrics_to_json(report.macro)},
              {"reviews", report.per_review.size()},
              {"per_review", std::move(per_review)},
              {"gold_frequency", frequency_to_json(report.gold_frequency)},
              {"predicted_frequency", frequency_to_json(report.predicted_frequency)},
              {"missing_predictions", report.missing_predictions}};
}

std::string format_frequency_table(const PairFrequency& freq) {
  std::string out;
  for (const auto& p : kFrequencyTableOrder) {
    out += pair_key(p) + ": " + std::to_string(freq[p.index()]) + "\n";
  }
  return out;
}

std::string format_report(const ClassifierReport& report) {
  std::string out;
  out += "reviews: " + std::to_string(report.per_review.size()) + "\n";
  out += "macro precision: " + fixed4(report.macro.precision) + "\n";
  out += "macro recall:    " + fixed4(report.macro.recall) + "\n";
  out += "macro f1:        " + fixed4(report.macro.f1) + "\n";
  if (!report.missing_predictions.empty()) {
    out += "missing predictions:";
    for (const auto& id : report.missing_predictions) out += " " + id;
    out += "\n";
  }
  out += "\nper review (precision recall f1):\n";
  for (const auto& [id, m] : report.per_review) {
    out += "  " + id + "  " + fixed4(m.precision) + " " + fixed4(m.recall) + " " +
           fixed4(m.f1) + "\n";
  }
  out += "\npair frequency (gold / predicted):\n";
  for (const auto& p : kFrequencyTableOrder) {
    out += "  " + pair_key(p) + ": " + std::to_string(report.gold_frequency[p.index()]) +
           " / " + std::to_string(report.predicted_frequency[p.index()]) + "\n";
  }
  return out;
}

}  // namespace quickcue
