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
#include <chrono>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "quickcue/domain.hpp"
#include "quickcue/error.hpp"
#include "quickcue/gateway.hpp"
#include "quickcue/preprocess.hpp"
#include "quickcue/prompt.hpp"

namespace quickcue {

// Review ids per aspect-sentiment pair. All ten buckets always exist.
class BucketMap {
 public:
  std::vector<std::string>& operator[](AspectSentimentPair p) { return buckets_[p.index()]; }
  const std::vector<std::string>& operator[](AspectSentimentPair p) const {
    return buckets_[p.index()];
  }
  std::size_t total_size() const;
  friend bool operator==(const BucketMap&, const BucketMap&) = default;

 private:
  std::array<std::vector<std::string>, kPairCount> buckets_;
};

struct FocusedSummary {
  AspectSentimentPair pair;
  std::vector<std::string> bullets;
  std::vector<std::string> source_review_ids;
};

struct AspectSection {
  Aspect aspect;
  FocusedSummary positive;
  FocusedSummary negative;
};

struct Diagnostic {
  enum class Stage { kClassify, kSummarize };
  Stage stage = Stage::kClassify;
  std::optional<std::string> review_id;
  std::optional<AspectSentimentPair> pair;
  ErrorCode code = ErrorCode::kNoPairListFound;
  std::string message;
};

struct DigestHierarchy {
  std::string restaurant_id;
  std::vector<AspectSection> aspects;
  std::chrono::system_clock::time_point generated_at;
  std::string prompt_version;
  std::vector<Diagnostic> diagnostics;
};

// Section order of every digest.
inline constexpr std::array<Aspect, 5> kDigestAspectOrder = {
    Aspect::kFood, Aspect::kPricing, Aspect::kCustomerService, Aspect::kHygiene,
    Aspect::kAmbiance};

struct SummarizeConfig {
  int max_reviews_per_bucket = 30;
  int max_bullets = 5;
};

// Throws Error{kConfigError}.
void validate(const SummarizeConfig& cfg);

struct PipelineConfig {
  PreprocessConfig preprocess;
  SummarizeConfig summarize;
};

struct ClassifyResult {
  std::vector<ClassifiedReview> reviews;
  std::vector<Diagnostic> diagnostics;  // input order
};

// One ClassifiedReview per input review, in input order. Requests fan out over
// up to client.max_parallel() workers. A response that does not parse is
// re-asked once; if that fails too, or the request itself fails, the review
// gets empty pairs and a diagnostic. Throws Error{kGatewayUnavailable} when
// every request failed at the gateway.
ClassifyResult classify_reviews(const RestaurantReviewSet& reviews, LlmClient& client,
                                const PromptEngine& engine);

std::vector<ClassifiedReview> classify_all(const RestaurantReviewSet& reviews,
                                           LlmClient& client,
                                           const PromptEngine& engine);

BucketMap group_by_pair(const std::vector<ClassifiedReview>& classified);

struct SummaryResult {
  std::array<FocusedSummary, kPairCount> summaries;  // by pair index
  std::vector<Diagnostic> diagnostics;
};

// Summaries for every bucket. Each non-empty bucket is summarized from at most
// max_reviews_per_bucket reviews, most recent first (undated reviews after
// dated ones, input order otherwise). Failed buckets degrade to an empty
// summary with a diagnostic; Error{kGatewayUnavailable} when every non-empty
// bucket failed at the gateway.
SummaryResult summarize_buckets(const BucketMap& buckets,
                                const std::unordered_map<std::string, Review>& reviews_by_id,
                                LlmClient& client, const PromptEngine& engine,
                                const SummarizeConfig& cfg);

// filter -> classify -> group -> summarize -> five sections in
// kDigestAspectOrder.
DigestHierarchy build_digest(const RestaurantReviewSet& reviews, const PipelineConfig& cfg,
                             LlmClient& client, const PromptEngine& engine,
                             const Date& today,
                             std::chrono::system_clock::time_point generated_at);

}  // namespace quickcue
