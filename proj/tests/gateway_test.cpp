#include <gtest/gtest.h>
#include <httplib.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <thread>

#include <unistd.h>

#include "quickcue/error.hpp"
#include "quickcue/gateway.hpp"
#include "quickcue/text.hpp"
#include "support.hpp"

using namespace quickcue;
namespace fs = std::filesystem;

namespace {

const AspectSentimentPair kFoodPos{Aspect::kFood, Sentiment::kPositive};
const AspectSentimentPair kFoodNeg{Aspect::kFood, Sentiment::kNegative};
const AspectSentimentPair kServicePos{Aspect::kCustomerService, Sentiment::kPositive};
const AspectSentimentPair kServiceNeg{Aspect::kCustomerService, Sentiment::kNegative};

const MockLexicon& lexicon() {
  static const MockLexicon lex = MockLexicon::demo();
  return lex;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("quickcue_gateway_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

class CountingBackend : public Backend {
 public:
  std::string complete(const PromptText& prompt) override {
    const int now = ++in_flight;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    if (delay.count() > 0) std::this_thread::sleep_for(delay);
    --in_flight;
    ++calls;
    if (fail_next.exchange(false)) throw ProviderError(503, 1, "scripted failure");
    return "echo:" + prompt.text;
  }
  std::atomic<int> calls{0};
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
  std::atomic<bool> fail_next{false};
  std::chrono::milliseconds delay{0};
};

struct Recorded {
  std::string url;
  HttpHeaders headers;
  std::string body;
  double timeout_seconds = 0;
};

class ScriptedTransport : public HttpTransport {
 public:
  explicit ScriptedTransport(std::vector<HttpResult> script) : script_(std::move(script)) {}
  HttpResult post_json(const std::string& url, const HttpHeaders& headers,
                       const std::string& body, std::chrono::duration<double> timeout) override {
    requests->push_back({url, headers, body, timeout.count()});
    const std::size_t i = std::min(requests->size() - 1, script_.size() - 1);
    return script_[i];
  }
  std::shared_ptr<std::vector<Recorded>> requests = std::make_shared<std::vector<Recorded>>();

 private:
  std::vector<HttpResult> script_;
};

HttpResult ok_body(const std::string& content) {
  HttpResult r;
  r.status = 200;
  r.body = Json{{"choices", Json::array({Json{{"message", {{"role", "assistant"},
                                                             {"content", content}}}}})}}
               .dump();
  return r;
}

HttpResult status(int code) {
  HttpResult r;
  r.status = code;
  r.body = R"({"error": "scripted"})";
  return r;
}

HttpResult failure(HttpResult::Kind kind) {
  HttpResult r;
  r.kind = kind;
  r.error = "scripted transport failure";
  return r;
}

GatewayConfig live_config(int max_retries = 3) {
  GatewayConfig cfg;
  cfg.mode = GatewayMode::kLive;
  cfg.base_url = "https://llm.example.test/v1/";
  cfg.model_name = "gpt-4";
  cfg.api_key_env = "QC_TEST_KEY";
  cfg.max_retries = max_retries;
  cfg.timeout_seconds = 12.5;
  return cfg;
}

struct LiveHarness {
  std::shared_ptr<std::vector<Recorded>> requests;
  std::shared_ptr<std::vector<std::chrono::milliseconds>> sleeps =
      std::make_shared<std::vector<std::chrono::milliseconds>>();
  std::unique_ptr<LiveBackend> backend;

  LiveHarness(std::vector<HttpResult> script, GatewayConfig cfg = live_config(),
              std::optional<std::string> key = "sk-test") {
    auto transport = std::make_unique<ScriptedTransport>(std::move(script));
    requests = transport->requests;
    backend = std::make_unique<LiveBackend>(
        cfg, std::move(transport), BackoffPolicy{},
        [s = sleeps](std::chrono::milliseconds d) { s->push_back(d); },
        [key](const std::string& name) -> std::optional<std::string> {
          if (name != "QC_TEST_KEY") return std::nullopt;
          return key;
        });
  }
};

const PromptText kPrompt{"Task Description: hello", "v1"};

}  // namespace

// ---------------------------------------------------------------------------
// Mock backend

TEST(MockSegmentation, SplitsAtPunctuationAndContrast) {
  EXPECT_EQ(segment_review("The food was delicious, but the service was slow."),
            (std::vector<std::string>{"food was delicious", "service was slow"}));
  EXPECT_EQ(segment_review("Great view; loud room!\nHowever cheap.  Although   OK"),
            (std::vector<std::string>{"Great view", "loud room", "cheap", "OK"}));
  EXPECT_EQ(segment_review("Butter chicken, yetis"),
            (std::vector<std::string>{"Butter chicken, yetis"}));
  EXPECT_TRUE(segment_review("").empty());
  EXPECT_TRUE(segment_review(" ... !! ").empty());
}

TEST(MockClassify, Examples) {
  EXPECT_EQ(mock_classify("The food was delicious, but the service was slow.", lexicon()),
            (PairSet{kFoodPos, kServiceNeg}));
  EXPECT_EQ(mock_classify("", lexicon()), PairSet{});
  EXPECT_EQ(mock_classify("We waited an hour.", lexicon()), PairSet{});
  EXPECT_EQ(mock_classify("The pasta was excellent but the chicken tenders were cold.", lexicon()),
            (PairSet{kFoodPos, kFoodNeg}));
  EXPECT_EQ(mock_classify("Our waiter was friendly.", lexicon()), PairSet{kServicePos});
}

TEST(MockClassify, InvariantUnderCaseAndWhitespace) {
  const std::vector<std::string> texts = {
      "The food was delicious, but the service was slow.",
      "Great value, but the staff ignored us.",
      "The decor was nice, the kitchen looked dirty.",
      "Prices are fair. Restrooms were filthy; music too loud.",
  };
  std::mt19937_64 rng(11);
  for (const auto& t : texts) {
    const PairSet base = mock_classify(t, lexicon());
    for (int i = 0; i < 50; ++i) {
      std::string v;
      for (char c : t) {
        const auto u = static_cast<unsigned char>(c);
        if (c == ' ') {
          v += std::string(1 + rng() % 3, rng() % 2 ? ' ' : '\t');
        } else {
          v += static_cast<char>(rng() % 2 ? std::toupper(u) : std::tolower(u));
        }
      }
      EXPECT_EQ(mock_classify(v, lexicon()), base) << v;
    }
  }
}

TEST(MockClassify, ResponseCarriesParseablePairList) {
  const std::string r = mock_classify_response("The burger was tasty", lexicon());
  EXPECT_NE(r.find(R"([["Food", "Positive"]])"), std::string::npos) << r;
  EXPECT_EQ(parse_pair_list(r), PairSet{kFoodPos});
  EXPECT_NE(r.find("CLUES: [burger, tasty]"), std::string::npos) << r;
  const std::string none = mock_classify_response("Nothing special to report.", lexicon());
  EXPECT_NE(none.find("ASPECT-SENTIMENT Pairs: []"), std::string::npos) << none;
  EXPECT_EQ(parse_pair_list(none), PairSet{});
}

TEST(MockSummarize, DeduplicatesCaseInsensitively) {
  const std::vector<std::string> reviews = {"The service was slow.", "Service was slow!",
                                            "Staff were rude.", "Great food."};
  EXPECT_EQ(mock_summarize(reviews, Aspect::kCustomerService, Sentiment::kNegative, lexicon(), 5),
            (std::vector<std::string>{"service was slow", "Staff were rude"}));
  EXPECT_TRUE(
      mock_summarize(reviews, Aspect::kHygiene, Sentiment::kNegative, lexicon(), 5).empty());
  EXPECT_EQ(mock_summarize(reviews, Aspect::kCustomerService, Sentiment::kNegative, lexicon(), 1),
            (std::vector<std::string>{"service was slow"}));
}

TEST(MockSummarize, OrderMatchesBruteForceCount) {
  const std::vector<std::string> clauses = {
      "the soup was bland",    "The soup was bland",   "fries were soggy",
      "steak was great",       "service was slow",     "Staff were rude",
      "waiter was friendly",   "prices were fair",     "room was loud",
      "we had fun",            "bill was overpriced",  "Kitchen looked dirty",
  };
  std::mt19937_64 rng(17);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::string> reviews(1 + rng() % 6);
    for (auto& r : reviews) {
      for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) {
        r += clauses[rng() % clauses.size()] + (rng() % 2 ? ". " : " but ");
      }
    }
    const AspectSentimentPair target = all_pairs()[rng() % kPairCount];
    const std::size_t cap = 1 + rng() % 6;

    // Oracle: count every matching clause by lowercased text, then rank.
    std::vector<std::string> order;
    std::map<std::string, std::pair<std::size_t, std::string>> counts;
    for (const auto& r : reviews) {
      for (const auto& seg : segment_review(r)) {
        if (!mock_classify(seg, lexicon()).contains(target)) continue;
        const std::string key = text::to_lower_ascii(seg);
        auto [it, inserted] = counts.emplace(key, std::make_pair(0u, seg));
        if (inserted) order.push_back(key);
        ++it->second.first;
      }
    }
    std::vector<std::string> ranked = order;
    std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
      return counts[a].first > counts[b].first;
    });
    std::vector<std::string> expected;
    for (const auto& k : ranked) {
      if (expected.size() == cap) break;
      expected.push_back(counts[k].second);
    }
    ASSERT_EQ(mock_summarize(reviews, target.aspect, target.sentiment, lexicon(), cap), expected);
  }
}

TEST(MockBackend, AnswersBothPromptKindsFromPromptText) {
  MockBackend backend = qc_test::demo_backend();
  const auto examples = default_classification_examples();
  const std::string review = "The food was delicious, but the service was slow.";
  const std::string classify = backend.complete(build_carp_prompt(review, examples));
  EXPECT_EQ(parse_pair_list(classify), (PairSet{kFoodPos, kServiceNeg}));

  const std::vector<std::string> bucket = {"The service was slow.", "Our waiter was rude."};
  const std::string summary =
      backend.complete(build_dsp_prompt(bucket, Aspect::kCustomerService, Sentiment::kNegative,
                                        default_summarization_examples()));
  EXPECT_EQ(parse_bullets(summary),
            (std::vector<std::string>{"service was slow", "Our waiter was rude"}));

  EXPECT_THROW(backend.complete({"What is the capital of France?", "x"}), ProviderError);
}

TEST(MockLexicon, Validation) {
  EXPECT_NO_THROW(lexicon().validate());
  EXPECT_THROW(MockLexicon::from_json(Json::parse(
                   R"({"aspect_keywords": {"Food": ["menu"], "Pricing": ["menu"]}})")),
               Error);
  EXPECT_THROW(MockLexicon::from_json(Json::parse(
                   R"({"aspect_keywords": {"Food": ["x"]}, "positive_words": ["ok"],
                       "negative_words": ["OK"]})")),
               Error);
  try {
    MockLexicon::from_json(Json::parse(R"({"aspect_keywords": {"Dessert": ["cake"]}})"));
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "aspect_keywords.Dessert");
  }
}

// ---------------------------------------------------------------------------
// Gateway: cache and concurrency

TEST(GatewayCache, RepeatedPromptServedFromCache) {
  auto backend = std::make_unique<CountingBackend>();
  auto* raw = backend.get();
  Gateway gw(GatewayConfig{}, std::move(backend));
  const std::string a = gw.complete({"prompt one", "v1"});
  const std::string b = gw.complete({"prompt one", "v1"});
  EXPECT_EQ(a, b);
  EXPECT_EQ(raw->calls, 1);
  EXPECT_EQ(gw.cache_hits(), 1u);
  gw.complete({"prompt one", "v2"});
  gw.complete({"prompt two", "v1"});
  EXPECT_EQ(raw->calls, 3);
}

TEST(GatewayCache, KeyCoversEveryComponent) {
  const PromptText p{"text", "v"};
  const auto k = ResponseCache::key(p, GatewayMode::kMock, "m");
  EXPECT_EQ(k, ResponseCache::key(p, GatewayMode::kMock, "m"));
  EXPECT_NE(k, ResponseCache::key({"text!", "v"}, GatewayMode::kMock, "m"));
  EXPECT_NE(k, ResponseCache::key({"text", "w"}, GatewayMode::kMock, "m"));
  EXPECT_NE(k, ResponseCache::key(p, GatewayMode::kLive, "m"));
  EXPECT_NE(k, ResponseCache::key(p, GatewayMode::kMock, "n"));
}

TEST(GatewayCache, FailuresAreNotCached) {
  auto backend = std::make_unique<CountingBackend>();
  auto* raw = backend.get();
  Gateway gw(GatewayConfig{}, std::move(backend));
  raw->fail_next = true;
  EXPECT_THROW(gw.complete(kPrompt), ProviderError);
  EXPECT_EQ(gw.complete(kPrompt), "echo:" + kPrompt.text);
  EXPECT_EQ(raw->calls, 2);
}

TEST(GatewayCache, PersistsAcrossInstances) {
  const fs::path dir = scratch_dir("persist");
  GatewayConfig cfg;
  cfg.cache_dir = dir.string();
  {
    Gateway gw(cfg, std::make_unique<CountingBackend>());
    gw.complete(kPrompt);
  }
  auto backend = std::make_unique<CountingBackend>();
  auto* raw = backend.get();
  Gateway again(cfg, std::move(backend));
  EXPECT_EQ(again.complete(kPrompt), "echo:" + kPrompt.text);
  EXPECT_EQ(raw->calls, 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().extension(), ".txt");
    ++files;
  }
  EXPECT_EQ(files, 1u);
  fs::remove_all(dir);
}

TEST(GatewayCache, UnusableDirectoryFallsBackToMemory) {
  const fs::path dir = scratch_dir("blocked");
  fs::create_directories(dir);
  const fs::path file = dir / "plain-file";
  std::ofstream(file) << "x";
  GatewayConfig cfg;
  cfg.cache_dir = (file / "cache").string();
  auto backend = std::make_unique<CountingBackend>();
  auto* raw = backend.get();
  Gateway gw(cfg, std::move(backend));
  EXPECT_NO_THROW(gw.complete(kPrompt));
  EXPECT_NO_THROW(gw.complete(kPrompt));
  EXPECT_EQ(raw->calls, 1);
  fs::remove_all(dir);
}

TEST(GatewayConcurrency, NeverExceedsMaxParallel) {
  for (int limit : {1, 3}) {
    auto backend = std::make_unique<CountingBackend>();
    backend->delay = std::chrono::milliseconds(30);
    auto* raw = backend.get();
    GatewayConfig cfg;
    cfg.max_parallel = limit;
    Gateway gw(cfg, std::move(backend));
    std::vector<std::thread> threads;
    for (int i = 0; i < 12; ++i) {
      threads.emplace_back([&gw, i] { gw.complete({"prompt " + std::to_string(i), "v"}); });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(raw->calls, 12);
    EXPECT_LE(raw->peak.load(), limit);
    EXPECT_GE(raw->peak.load(), 1);
  }
}

TEST(GatewayConfigValidation, RejectsBadValues) {
  GatewayConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.max_parallel = 0;
  EXPECT_THROW(validate(cfg), Error);
  cfg = GatewayConfig{};
  cfg.timeout_seconds = 0;
  EXPECT_THROW(validate(cfg), Error);
  cfg = GatewayConfig{};
  cfg.mode = GatewayMode::kLive;
  EXPECT_THROW(validate(cfg), Error);
  cfg.base_url = "https://x";
  cfg.model_name = "m";
  EXPECT_NO_THROW(validate(cfg));
  EXPECT_EQ(parse_gateway_mode(" MOCK "), GatewayMode::kMock);
  EXPECT_THROW(parse_gateway_mode("offline"), Error);
}

TEST(GatewayCreate, MockModeNeedsNoCredential) {
  GatewayConfig cfg;
  cfg.api_key_env = "QC_TEST_SURELY_UNSET_VARIABLE";
  auto gw = Gateway::create(cfg);
  EXPECT_TRUE(gw->credential_available());
  const std::string out = gw->complete(
      build_carp_prompt("Lovely patio.", default_classification_examples()));
  EXPECT_EQ(parse_pair_list(out), (PairSet{{Aspect::kAmbiance, Sentiment::kPositive}}));
}

TEST(GatewayCreate, LiveModeReportsMissingCredential) {
  GatewayConfig cfg = live_config();
  cfg.api_key_env = "QC_TEST_SURELY_UNSET_VARIABLE";
  auto gw = Gateway::create(cfg);
  EXPECT_FALSE(gw->credential_available());
  try {
    gw->complete(kPrompt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCredentialMissing);
  }
}

// ---------------------------------------------------------------------------
// Live backend against a scripted transport

TEST(LiveBackend, SendsChatCompletionRequest) {
  LiveHarness h({ok_body("ASPECT-SENTIMENT Pairs: []")});
  EXPECT_EQ(h.backend->complete(kPrompt), "ASPECT-SENTIMENT Pairs: []");
  ASSERT_EQ(h.requests->size(), 1u);
  const Recorded& r = h.requests->front();
  EXPECT_EQ(r.url, "https://llm.example.test/v1/chat/completions");
  EXPECT_DOUBLE_EQ(r.timeout_seconds, 12.5);
  EXPECT_NE(std::find(r.headers.begin(), r.headers.end(),
                      std::make_pair(std::string("Authorization"), std::string("Bearer sk-test"))),
            r.headers.end());
  const Json body = Json::parse(r.body);
  EXPECT_EQ(body["model"], "gpt-4");
  EXPECT_EQ(body["messages"][0]["role"], "user");
  EXPECT_EQ(body["messages"][0]["content"], kPrompt.text);
  EXPECT_FALSE(body.contains("temperature"));

  GatewayConfig cfg = live_config();
  cfg.temperature = 0.0;
  LiveHarness t({ok_body("x")}, cfg);
  t.backend->complete(kPrompt);
  EXPECT_EQ(Json::parse(t.requests->front().body)["temperature"], 0.0);
}

TEST(LiveBackend, MissingCredentialFailsBeforeAnyRequest) {
  for (std::optional<std::string> key : {std::optional<std::string>{}, std::optional<std::string>{""}}) {
    LiveHarness h({ok_body("x")}, live_config(), key);
    try {
      h.backend->complete(kPrompt);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kCredentialMissing);
      EXPECT_NE(std::string(e.what()).find("QC_TEST_KEY"), std::string::npos);
    }
    EXPECT_TRUE(h.requests->empty());
    EXPECT_FALSE(h.backend->credential_available());
  }
}

TEST(LiveBackend, RetriesTransientStatusesThenSucceeds) {
  LiveHarness h({status(503), status(429), ok_body("done")});
  EXPECT_EQ(h.backend->complete(kPrompt), "done");
  EXPECT_EQ(h.requests->size(), 3u);
  EXPECT_EQ(*h.sleeps, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(500),
                                                               std::chrono::milliseconds(1000)}));
}

TEST(LiveBackend, GivesUpAfterMaxRetries) {
  for (int retries : {0, 1, 4}) {
    LiveHarness h({status(500)}, live_config(retries));
    try {
      h.backend->complete(kPrompt);
      FAIL();
    } catch (const ProviderError& e) {
      EXPECT_EQ(e.status(), 500);
      EXPECT_EQ(e.attempts(), retries + 1);
    }
    EXPECT_EQ(h.requests->size(), static_cast<std::size_t>(retries + 1));
    EXPECT_EQ(h.sleeps->size(), static_cast<std::size_t>(retries));
    EXPECT_TRUE(std::is_sorted(h.sleeps->begin(), h.sleeps->end()));
  }
}

TEST(LiveBackend, ClientErrorsAreNotRetried) {
  for (int code : {400, 401, 403, 404, 422}) {
    LiveHarness h({status(code), ok_body("never")});
    try {
      h.backend->complete(kPrompt);
      FAIL();
    } catch (const ProviderError& e) {
      EXPECT_EQ(e.status(), code);
      EXPECT_EQ(e.attempts(), 1);
    }
    EXPECT_EQ(h.requests->size(), 1u);
  }
}

TEST(LiveBackend, TimeoutsAndNetworkErrors) {
  LiveHarness timeouts({failure(HttpResult::Kind::kTimeout)}, live_config(2));
  try {
    timeouts.backend->complete(kPrompt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTimeout);
  }
  EXPECT_EQ(timeouts.requests->size(), 3u);

  LiveHarness network({failure(HttpResult::Kind::kNetworkError)}, live_config(1));
  try {
    network.backend->complete(kPrompt);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.status(), 0);
    EXPECT_EQ(e.attempts(), 2);
  }

  LiveHarness recovered({failure(HttpResult::Kind::kTimeout), ok_body("late")});
  EXPECT_EQ(recovered.backend->complete(kPrompt), "late");
}

TEST(LiveBackend, ResponseWithoutContentIsAProviderError) {
  HttpResult bad;
  bad.status = 200;
  bad.body = R"({"choices": []})";
  LiveHarness h({bad});
  EXPECT_THROW(h.backend->complete(kPrompt), ProviderError);
  EXPECT_EQ(h.requests->size(), 1u);
}

TEST(BackoffPolicy, NondecreasingAndCapped) {
  const BackoffPolicy p;
  for (int i = 0; i < 40; ++i) {
    EXPECT_LE(p.delay(i), p.delay(i + 1));
    EXPECT_LE(p.delay(i), p.maximum);
  }
  EXPECT_EQ(p.delay(0), p.initial);
  EXPECT_EQ(p.delay(40), p.maximum);
}

// ---------------------------------------------------------------------------
// Live backend against a local HTTP provider

class LocalProvider : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
      ++hits_;
      auth_ = req.get_header_value("Authorization");
      const Json body = Json::parse(req.body);
      if (body["model"] == "slow-model") std::this_thread::sleep_for(std::chrono::milliseconds(1500));
      if (body["model"] == "flaky-model" && hits_ == 1) {
        res.status = 503;
        return;
      }
      const std::string content = "echo " + body["messages"][0]["content"].get<std::string>();
      res.set_content(
          Json{{"choices", Json::array({Json{{"message", {{"content", content}}}}})}}.dump(),
          "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  GatewayConfig config(const std::string& model) const {
    GatewayConfig cfg = live_config(1);
    cfg.base_url = "http://127.0.0.1:" + std::to_string(port_) + "/v1";
    cfg.model_name = model;
    cfg.timeout_seconds = 0.4;
    return cfg;
  }

  std::unique_ptr<LiveBackend> backend(const std::string& model) const {
    return std::make_unique<LiveBackend>(
        config(model), make_http_transport(), BackoffPolicy{}, [](auto) {},
        [](const std::string&) { return std::optional<std::string>("sk-local"); });
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::string auth_;
};

TEST_F(LocalProvider, RoundTrip) {
  EXPECT_EQ(backend("gpt-4")->complete(kPrompt), "echo " + kPrompt.text);
  EXPECT_EQ(auth_, "Bearer sk-local");
}

TEST_F(LocalProvider, RetriesServerError) {
  EXPECT_EQ(backend("flaky-model")->complete(kPrompt), "echo " + kPrompt.text);
  EXPECT_EQ(hits_, 2);
}

TEST_F(LocalProvider, SlowProviderTimesOut) {
  auto transport = make_http_transport();
  const auto result = transport->post_json(
      config("slow-model").base_url + "/chat/completions", {},
      Json{{"model", "slow-model"}, {"messages", Json::array({Json{{"content", "x"}}})}}.dump(),
      std::chrono::duration<double>(0.3));
  EXPECT_EQ(result.kind, HttpResult::Kind::kTimeout) << result.error;
}

TEST_F(LocalProvider, ConnectionRefusedIsANetworkError) {
  auto transport = make_http_transport();
  httplib::Server probe;
  const int closed_port = probe.bind_to_any_port("127.0.0.1");
  probe.stop();
  const auto result = transport->post_json(
      "http://127.0.0.1:" + std::to_string(closed_port) + "/v1/chat/completions", {}, "{}",
      std::chrono::duration<double>(1.0));
  EXPECT_NE(result.kind, HttpResult::Kind::kResponse);
}
