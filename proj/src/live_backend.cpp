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

#include <httplib.h>

#include <cmath>
#include <cstdlib>
#include <thread>

#include "quickcue/error.hpp"
#include "quickcue/gateway.hpp"
#include "quickcue/log.hpp"

namespace quickcue {
namespace {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path;
};

std::optional<ParsedUrl> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return std::nullopt;
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return ParsedUrl{url, "/"};
  return ParsedUrl{url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport : public HttpTransport {
 public:
  HttpResult post_json(const std::string& url, const HttpHeaders& headers,
                       const std::string& body,
                       std::chrono::duration<double> timeout) override {
    HttpResult result;
    auto parsed = split_url(url);
    if (!parsed) {
      result.kind = HttpResult::Kind::kNetworkError;
      result.error = "invalid URL";
      return result;
    }
    httplib::Client client(parsed->scheme_host_port);
    if (!client.is_valid()) {
      result.kind = HttpResult::Kind::kNetworkError;
      result.error = "unsupported URL scheme";
      return result;
    }
    const auto micros =
        std::chrono::duration_cast<std::chrono::microseconds>(timeout).count();
    const time_t sec = static_cast<time_t>(micros / 1'000'000);
    const time_t usec = static_cast<time_t>(micros % 1'000'000);
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);

    httplib::Request req;
    req.method = "POST";
    req.path = parsed->path;
    for (const auto& [k, v] : headers) req.headers.emplace(k, v);
    req.headers.emplace("Content-Type", "application/json");
    req.body = body;
    // Read timeouts are per socket read; the progress hook bounds the whole
    // response.
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(timeout);
    bool expired = false;
    req.progress = [&](uint64_t, uint64_t) {
      expired = std::chrono::steady_clock::now() > deadline;
      return !expired;
    };

    const auto started = std::chrono::steady_clock::now();
    auto res = client.send(req);
    if (!res) {
      const auto err = res.error();
      // A read timeout surfaces as a plain read error.
      const bool slow = std::chrono::steady_clock::now() - started >= timeout;
      const bool timed_out = expired || err == httplib::Error::ConnectionTimeout ||
                             (err == httplib::Error::Read && slow);
      result.kind = timed_out ? HttpResult::Kind::kTimeout
                              : HttpResult::Kind::kNetworkError;
      result.error = httplib::to_string(err);
      return result;
    }
    result.status = res->status;
    result.body = res->body;
    return result;
  }
};

bool is_retryable_status(int status) { return status == 429 || status >= 500; }

std::string extract_content(const std::string& body) {
  const Json j = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return {};
  const auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) return {};
  const Json& first = (*choices)[0];
  if (!first.contains("message") || !first["message"].contains("content") ||
      !first["message"]["content"].is_string()) {
    return {};
  }
  return first["message"]["content"].get<std::string>();
}

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport() {
  return std::make_unique<HttplibTransport>();
}

std::chrono::milliseconds BackoffPolicy::delay(int retry) const {
  const double scaled = static_cast<double>(initial.count()) *
                        std::pow(multiplier, std::max(retry, 0));
  const double capped = std::min(scaled, static_cast<double>(maximum.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(capped));
}

std::optional<std::string> getenv_lookup(const std::string& name) {
  const char* value = std::getenv(name.c_str());
  if (value == nullptr) return std::nullopt;
  return std::string(value);
}

LiveBackend::LiveBackend(GatewayConfig cfg, std::unique_ptr<HttpTransport> transport,
                         BackoffPolicy backoff, Sleeper sleep, EnvLookup env)
    : cfg_(std::move(cfg)),
      transport_(std::move(transport)),
      backoff_(backoff),
      sleep_(sleep ? std::move(sleep)
                   : Sleeper([](std::chrono::milliseconds d) {
                       std::this_thread::sleep_for(d);
                     })),
      env_(std::move(env)) {}

bool LiveBackend::credential_available() const {
  const auto key = env_(cfg_.api_key_env);
  return key && !key->empty();
}

std::string LiveBackend::complete(const PromptText& prompt) {
  const auto key = env_(cfg_.api_key_env);
  if (!key || key->empty()) {
    throw Error(ErrorCode::kCredentialMissing,
                "environment variable " + cfg_.api_key_env + " is not set");
  }
  std::string url = cfg_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  url += "/chat/completions";

  Json body;
  body["model"] = cfg_.model_name;
  body["messages"] = Json::array({Json{{"role", "user"}, {"content", prompt.text}}});
  if (cfg_.temperature) body["temperature"] = *cfg_.temperature;
  const std::string payload = body.dump();
  const HttpHeaders headers = {{"Authorization", "Bearer " + *key}};
  const std::chrono::duration<double> timeout(cfg_.timeout_seconds);

  HttpResult last;
  int attempts = 0;
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) sleep_(backoff_.delay(attempt - 1));
    ++attempts;
    last = transport_->post_json(url, headers, payload, timeout);
    if (last.kind == HttpResult::Kind::kResponse) {
      if (last.status >= 200 && last.status < 300) {
        std::string content = extract_content(last.body);
        if (content.empty()) {
          throw ProviderError(last.status, attempts,
                              "provider response has no message content");
        }
        return content;
      }
      if (!is_retryable_status(last.status)) {
        throw ProviderError(last.status, attempts,
                            "provider returned HTTP " + std::to_string(last.status));
      }
    }
    logger()->warn("LLM request attempt {} failed ({}); {}", attempts,
                   last.kind == HttpResult::Kind::kResponse
                       ? "HTTP " + std::to_string(last.status)
                       : last.error,
                   attempt < cfg_.max_retries ? "retrying" : "giving up");
  }
  if (last.kind == HttpResult::Kind::kTimeout) {
    throw Error(ErrorCode::kTimeout, "LLM request timed out after " +
                                         std::to_string(attempts) + " attempts");
  }
  throw ProviderError(last.status, attempts,
                      last.kind == HttpResult::Kind::kResponse
                          ? "provider returned HTTP " + std::to_string(last.status) +
                                " after " + std::to_string(attempts) + " attempts"
                          : "network error after " + std::to_string(attempts) +
                                " attempts: " + last.error);
}

}  // namespace quickcue
