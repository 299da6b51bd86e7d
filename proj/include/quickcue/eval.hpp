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

#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "quickcue/domain.hpp"
#include "quickcue/json_io.hpp"

namespace quickcue {

struct ReviewMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct GoldAnnotation {
  std::string review_id;
  PairSet gold_pairs;
};

struct AnnotationScore {
  std::string example_id;
  std::string annotator_id;
  int factuality = 0;  // 1..10
  int noisiness = 0;   // 1..10
};

// Both sets empty scores (1, 1, 1); exactly one empty scores (0, 0, 0).
ReviewMetrics per_review_prf(const PairSet& predicted, const PairSet& gold);

// Field-wise arithmetic mean; f1 is the mean of the per-review f1 values.
// Throws Error{kEmptyDataset}.
ReviewMetrics macro_average(std::span<const ReviewMetrics> per_review);

// Row order of frequency tables: [Food, Negative], [Food, Positive],
// [Customer Service, Negative], ... , [Hygiene, Positive].
extern const std::array<AspectSentimentPair, kPairCount> kFrequencyTableOrder;

using PairFrequency = std::array<std::size_t, kPairCount>;  // by pair index

PairFrequency pair_frequency(std::span<const PairSet> sets);

struct ClassifierReport {
  ReviewMetrics macro;
  std::vector<std::pair<std::string, ReviewMetrics>> per_review;  // gold order
  PairFrequency gold_frequency{};
  PairFrequency predicted_frequency{};
  std::vector<std::string> missing_predictions;
};

// Gold reviews without a prediction are scored against an empty prediction
// and listed in missing_predictions. Throws Error{kEmptyDataset} and
// SchemaError for duplicate gold ids.
ClassifierReport evaluate_classifier(std::span<const GoldAnnotation> gold,
                                     const std::map<std::string, PairSet>& predictions);

struct AnnotationAggregate {
  double factuality = 0;
  double noisiness = 0;
};

// Mean per example across its annotators, then the unweighted mean of those
// per-example means. Throws Error{kEmptyDataset}, Error{kDuplicateScore} for a
// repeated (example, annotator) and SchemaError for scores outside 1..10.
AnnotationAggregate aggregate_annotations(std::span<const AnnotationScore> scores);

// [{"review_id", "pairs": [[aspect, sentiment], ...]}, ...]
std::vector<GoldAnnotation> gold_from_json(const Json& j);
// The same array shape, or a classify response document.
std::map<std::string, PairSet> predictions_from_json(const Json& j);
// [{"example_id", "annotator_id", "factuality", "noisiness"}, ...]
std::vector<AnnotationScore> annotations_from_json(const Json& j);

Json report_to_json(const ClassifierReport& report);
std::string format_report(const ClassifierReport& report);
std::string format_frequency_table(const PairFrequency& freq);

}  // namespace quickcue
