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

#include "quickcue/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "quickcue/log.hpp"

namespace quickcue {
namespace {

// Runs fn(0..n-1) on up to `width` threads.
template <typename Fn>
void parallel_for(std::size_t n, int width, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(width, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

bool is_gateway_failure(ErrorCode code) {
  return code == ErrorCode::kCredentialMissing || code == ErrorCode::kProviderError ||
         code == ErrorCode::kTimeout;
}

bool is_parse_failure(ErrorCode code) {
  return code == ErrorCode::kNoPairListFound || code == ErrorCode::kMalformedPair ||
         code == ErrorCode::kUnknownAspect || code == ErrorCode::kUnknownSentiment;
}

struct Outcome {
  PairSet pairs;
  std::optional<Diagnostic> diagnostic;
  bool gateway_failed = false;
};

Outcome classify_one(const Review& review, LlmClient& client, const PromptEngine& engine) {
  Outcome out;
  auto fail = [&](const Error& e) {
    out.diagnostic = Diagnostic{Diagnostic::Stage::kClassify, review.id, std::nullopt,
                                e.code(), e.what()};
    out.gateway_failed = is_gateway_failure(e.code());
  };
  try {
    const PromptText prompt = engine.classify_prompt(review.text);
    const std::string first = client.complete(prompt);
    try {
      out.pairs = parse_pair_list(first);
      return out;
    } catch (const Error& e) {
      if (!is_parse_failure(e.code())) throw;
      logger()->debug("review {}: unparseable answer ({}); re-asking", review.id, e.what());
    }
    out.pairs = parse_pair_list(client.complete(with_reask(prompt)));
  } catch (const Error& e) {
    out.pairs = PairSet{};
    fail(e);
  }
  return out;
}

std::string pair_label(AspectSentimentPair p) {
  return std::string(display(p.aspect)) + "/" + std::string(display(p.sentiment));
}

}  // namespace

std::size_t BucketMap::total_size() const {
  std::size_t n = 0;
  for (const auto& b : buckets_) n += b.size();
  return n;
}

void validate(const SummarizeConfig& cfg) {
  if (cfg.max_reviews_per_bucket < 1) {
    throw Error(ErrorCode::kConfigError, "summarize.max_reviews_per_bucket must be >= 1");
  }
  if (cfg.max_bullets < 1) {
    throw Error(ErrorCode::kConfigError, "summarize.max_bullets must be >= 1");
  }
}

ClassifyResult classify_reviews(const RestaurantReviewSet& reviews, LlmClient& client,
                                const PromptEngine& engine) {
  const std::size_t n = reviews.reviews.size();
  std::vector<Outcome> outcomes(n);
  parallel_for(n, client.max_parallel(), [&](std::size_t i) {
    outcomes[i] = classify_one(reviews.reviews[i], client, engine);
  });

  ClassifyResult result;
  result.reviews.reserve(n);
  std::size_t gateway_failures = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& o = outcomes[i];
    ClassifiedReview cr{reviews.reviews[i], o.pairs, std::nullopt};
    if (o.diagnostic) {
      cr.diagnostic = std::string(to_string(o.diagnostic->code)) + ": " + o.diagnostic->message;
      logger()->warn("review {} left unclassified: {}", reviews.reviews[i].id, *cr.diagnostic);
      result.diagnostics.push_back(std::move(*o.diagnostic));
    }
    if (o.gateway_failed) ++gateway_failures;
    result.reviews.push_back(std::move(cr));
  }
  if (n > 0 && gateway_failures == n) {
    throw Error(ErrorCode::kGatewayUnavailable,
                "all " + std::to_string(n) + " classification requests failed; last error: " +
                    result.diagnostics.back().message);
  }
  return result;
}

std::vector<ClassifiedReview> classify_all(const RestaurantReviewSet& reviews,
                                           LlmClient& client,
                                           const PromptEngine& engine) {
  return classify_reviews(reviews, client, engine).reviews;
}

BucketMap group_by_pair(const std::vector<ClassifiedReview>& classified) {
  BucketMap buckets;
  for (const auto& cr : classified) {
    for (const auto& p : cr.pairs.to_vector()) {
      auto& bucket = buckets[p];
      if (std::find(bucket.begin(), bucket.end(), cr.review.id) == bucket.end()) {
        bucket.push_back(cr.review.id);
      }
    }
  }
  return buckets;
}

SummaryResult summarize_buckets(const BucketMap& buckets,
                                const std::unordered_map<std::string, Review>& reviews_by_id,
                                LlmClient& client, const PromptEngine& engine,
                                const SummarizeConfig& cfg) {
  SummaryResult result;
  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < kPairCount; ++i) {
    const auto pair = AspectSentimentPair::from_index(i);
    result.summaries[i].pair = pair;
    if (!buckets[pair].empty()) work.push_back(i);
  }

  std::vector<std::optional<Diagnostic>> failures(work.size());
  std::vector<char> gateway_failed(work.size(), 0);
  parallel_for(work.size(), client.max_parallel(), [&](std::size_t w) {
    const auto pair = AspectSentimentPair::from_index(work[w]);
    std::vector<const Review*> selected;
    for (const auto& id : buckets[pair]) {
      const auto it = reviews_by_id.find(id);
      if (it == reviews_by_id.end()) {
        throw Error(ErrorCode::kInvalidReview, "bucket references unknown review id " + id);
      }
      selected.push_back(&it->second);
    }
    std::stable_sort(selected.begin(), selected.end(), [](const Review* a, const Review* b) {
      if (a->date && b->date) return *a->date > *b->date;
      return a->date.has_value() && !b->date.has_value();
    });
    if (selected.size() > static_cast<std::size_t>(cfg.max_reviews_per_bucket)) {
      selected.resize(static_cast<std::size_t>(cfg.max_reviews_per_bucket));
    }
    std::vector<std::string> texts;
    std::vector<std::string> ids;
    for (const Review* r : selected) {
      texts.push_back(r->text);
      ids.push_back(r->id);
    }

    auto& summary = result.summaries[work[w]];
    try {
      auto bullets = parse_bullets(client.complete(engine.summarize_prompt(texts, pair)));
      if (bullets.size() > static_cast<std::size_t>(cfg.max_bullets)) {
        bullets.resize(static_cast<std::size_t>(cfg.max_bullets));
      }
      if (bullets.empty()) {
        throw Error(ErrorCode::kNoBulletsFound, "summarizer returned no bullets");
      }
      summary.bullets = std::move(bullets);
      summary.source_review_ids = std::move(ids);
    } catch (const Error& e) {
      failures[w] = Diagnostic{Diagnostic::Stage::kSummarize, std::nullopt, pair, e.code(),
                               e.what()};
      gateway_failed[w] = is_gateway_failure(e.code()) ? 1 : 0;
    }
  });

  std::size_t gateway_failures = 0;
  for (std::size_t w = 0; w < work.size(); ++w) {
    if (!failures[w]) continue;
    logger()->warn("summary for {} left empty: {}: {}",
                   pair_label(*failures[w]->pair), to_string(failures[w]->code),
                   failures[w]->message);
    result.diagnostics.push_back(std::move(*failures[w]));
    gateway_failures += gateway_failed[w];
  }
  if (!work.empty() && gateway_failures == work.size()) {
    throw Error(ErrorCode::kGatewayUnavailable,
                "all " + std::to_string(work.size()) +
                    " summarization requests failed; last error: " +
                    result.diagnostics.back().message);
  }
  return result;
}

DigestHierarchy build_digest(const RestaurantReviewSet& reviews, const PipelineConfig& cfg,
                             LlmClient& client, const PromptEngine& engine,
                             const Date& today,
                             std::chrono::system_clock::time_point generated_at) {
  const RestaurantReviewSet kept = filter_reviews(reviews, cfg.preprocess, today);
  ClassifyResult classified = classify_reviews(kept, client, engine);
  const BucketMap buckets = group_by_pair(classified.reviews);

  std::unordered_map<std::string, Review> by_id;
  for (const auto& r : kept.reviews) by_id.emplace(r.id, r);
  SummaryResult summaries = summarize_buckets(buckets, by_id, client, engine, cfg.summarize);

  DigestHierarchy digest;
  digest.restaurant_id = reviews.restaurant_id;
  digest.generated_at = generated_at;
  digest.prompt_version = engine.version();
  for (Aspect a : kDigestAspectOrder) {
    digest.aspects.push_back(
        AspectSection{a, summaries.summaries[AspectSentimentPair{a, Sentiment::kPositive}.index()],
                      summaries.summaries[AspectSentimentPair{a, Sentiment::kNegative}.index()]});
  }
  digest.diagnostics = std::move(classified.diagnostics);
  for (auto& d : summaries.diagnostics) digest.diagnostics.push_back(std::move(d));
  return digest;
}

}  // namespace quickcue
