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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quickcue/domain.hpp"
#include "quickcue/json_io.hpp"
#include "quickcue/prompt.hpp"

namespace quickcue {

enum class GatewayMode { kLive, kMock };

std::string_view to_string(GatewayMode mode);
// "live" or "mock", case-insensitive. Throws Error{kConfigError}.
GatewayMode parse_gateway_mode(std::string_view text);

inline constexpr std::string_view kDefaultApiKeyEnv = "QUICKCUE_LLM_API_KEY";

struct GatewayConfig {
  GatewayMode mode = GatewayMode::kMock;
  std::string base_url;    // live: e.g. https://api.openai.com/v1
  std::string model_name;  // live: e.g. gpt-4
  std::string api_key_env = std::string(kDefaultApiKeyEnv);
  int max_parallel = 4;
  int max_retries = 3;
  double timeout_seconds = 60.0;
  // Sent only when set; provider defaults apply otherwise.
  std::optional<double> temperature;
  std::optional<std::string> cache_dir;
  // Mock mode: lexicon file; the compiled-in demo lexicon when unset.
  std::optional<std::string> lexicon_path;
  int mock_max_bullets = 5;
};

// Throws Error{kConfigError} naming the offending field.
void validate(const GatewayConfig& cfg);

// ---------------------------------------------------------------------------
// Offline mock

struct MockLexicon {
  std::map<Aspect, std::set<std::string>> aspect_keywords;
  std::set<std::string> positive_words;
  std::set<std::string> negative_words;

  // {"aspect_keywords": {"Food": [...], ...}, "positive_words": [...],
  //  "negative_words": [...]}. Throws SchemaError / Error{kConfigError}.
  static MockLexicon from_json(const Json& j);
  static MockLexicon demo();

  // Keyword sets pairwise disjoint across aspects and the two polarity sets
  // disjoint. Throws Error{kConfigError}.
  void validate() const;
};

// Clause-level segments: split at . ! ? ; and line breaks, and at the
// contrastive conjunctions but/however/although/though/whereas/yet (which are
// dropped). Segments are trimmed with internal whitespace collapsed and lose
// one leading article (the/a/an).
std::vector<std::string> segment_review(std::string_view text);

// Lowercased letter runs.
std::vector<std::string> tokenize(std::string_view segment);

// Union over segments of aspect x polarity co-occurrences.
PairSet mock_classify(std::string_view review_text, const MockLexicon& lexicon);

// Matching segments, case-insensitively deduplicated, ordered by descending
// frequency then first occurrence, at most max_bullets.
std::vector<std::string> mock_summarize(std::span<const std::string> review_texts,
                                        Aspect aspect, Sentiment sentiment,
                                        const MockLexicon& lexicon,
                                        std::size_t max_bullets);

// CLUES / REASONING / ASPECT-SENTIMENT Pairs text as a prompted model would
// answer.
std::string mock_classify_response(std::string_view review_text,
                                   const MockLexicon& lexicon);

// ---------------------------------------------------------------------------
// Backends

// What the pipeline talks to. Implementations must be safe for concurrent
// calls.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const PromptText& prompt) = 0;
  // Fan-out width callers may use; the implementation still enforces its own
  // bound.
  virtual int max_parallel() const { return 1; }
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const PromptText& prompt) = 0;
};

class MockBackend : public Backend {
 public:
  MockBackend(MockLexicon lexicon, std::size_t max_bullets)
      : lexicon_(std::move(lexicon)), max_bullets_(max_bullets) {}
  std::string complete(const PromptText& prompt) override;

 private:
  MockLexicon lexicon_;
  std::size_t max_bullets_;
};

struct HttpResult {
  enum class Kind { kResponse, kNetworkError, kTimeout };
  Kind kind = Kind::kResponse;
  int status = 0;
  std::string body;
  std::string error;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // POST with a JSON body. Never throws for transport failures; they are
  // reported through HttpResult::kind.
  virtual HttpResult post_json(const std::string& url, const HttpHeaders& headers,
                               const std::string& body,
                               std::chrono::duration<double> timeout) = 0;
};

std::unique_ptr<HttpTransport> make_http_transport();

// Delay before retry n (0-based) is initial * multiplier^n capped at maximum,
// so the sequence never decreases.
struct BackoffPolicy {
  std::chrono::milliseconds initial{500};
  std::chrono::milliseconds maximum{30'000};
  double multiplier = 2.0;

  std::chrono::milliseconds delay(int retry) const;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> getenv_lookup(const std::string& name);

// Chat-completion provider: POST {base_url}/chat/completions with
// {"model", "messages": [{"role": "user", "content": prompt}]} and a bearer
// credential read from the configured environment variable.
class LiveBackend : public Backend {
 public:
  LiveBackend(GatewayConfig cfg, std::unique_ptr<HttpTransport> transport,
              BackoffPolicy backoff = {}, Sleeper sleep = {},
              EnvLookup env = getenv_lookup);

  // Throws Error{kCredentialMissing} before any request when the variable is
  // unset or empty; ProviderError once retries are exhausted or on a
  // non-retryable status; Error{kTimeout} when the final attempt timed out.
  std::string complete(const PromptText& prompt) override;

  bool credential_available() const;

 private:
  GatewayConfig cfg_;
  std::unique_ptr<HttpTransport> transport_;
  BackoffPolicy backoff_;
  Sleeper sleep_;
  EnvLookup env_;
};

// Completion cache keyed on (prompt hash, prompt_version, mode, model). With a
// directory configured entries persist as one file per key. Disk problems are
// logged and otherwise ignored.
class ResponseCache {
 public:
  explicit ResponseCache(std::optional<std::filesystem::path> dir = std::nullopt);

  static std::string key(const PromptText& prompt, GatewayMode mode,
                         std::string_view model_name);

  std::optional<std::string> get(const std::string& key);
  void put(const std::string& key, const std::string& response);
  std::size_t size() const;

 private:
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::string> entries_;
};

// Cache + bounded parallelism in front of a backend.
class Gateway : public LlmClient {
 public:
  Gateway(GatewayConfig cfg, std::unique_ptr<Backend> backend);

  // Builds the backend for cfg.mode. Validates cfg.
  static std::unique_ptr<Gateway> create(const GatewayConfig& cfg);

  std::string complete(const PromptText& prompt) override;
  int max_parallel() const override { return cfg_.max_parallel; }

  const GatewayConfig& config() const { return cfg_; }
  // Mock mode always reports true.
  bool credential_available() const;

  std::size_t backend_calls() const { return backend_calls_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }

 private:
  GatewayConfig cfg_;
  std::unique_ptr<Backend> backend_;
  ResponseCache cache_;
  std::counting_semaphore<> slots_;
  std::atomic<std::size_t> backend_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

}  // namespace quickcue
