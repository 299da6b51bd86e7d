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

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "quickcue/config.hpp"
#include "quickcue/gateway.hpp"
#include "quickcue/prompt.hpp"

namespace quickcue {

struct HttpResponse {
  int status = 200;
  std::string body;  // serialized JSON document
};

int http_status_for(ErrorCode code);

// Exact match, or a "scheme://*" entry matching every origin of that scheme.
bool origin_allowed(const std::vector<std::string>& allow_list, std::string_view origin);

// Request handling shared by the HTTP server and the CLI, so both produce the
// same documents for the same input and config.
class Service {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;
  using CredentialCheck = std::function<bool()>;

  Service(ServiceConfig cfg, std::shared_ptr<LlmClient> client, PromptEngine engine,
          Clock clock = {}, CredentialCheck credential = {});

  // Validates cfg, loads the example stores and builds the gateway.
  static std::unique_ptr<Service> create(const ServiceConfig& cfg, Clock clock = {});

  // Body: a RestaurantReviewSet document. 400 on schema violations, 413 over
  // the review limit, 502 when the gateway is unavailable.
  HttpResponse classify(std::string_view body) const;
  HttpResponse digest(std::string_view body) const;
  HttpResponse health() const;

  const ServiceConfig& config() const { return cfg_; }
  const PromptEngine& engine() const { return engine_; }

 private:
  RestaurantReviewSet parse_request(std::string_view body) const;
  Date today() const;

  ServiceConfig cfg_;
  std::shared_ptr<LlmClient> client_;
  PromptEngine engine_;
  Clock clock_;
  CredentialCheck credential_;
  std::chrono::steady_clock::time_point started_;
};

// HTTP/1.1 front end: POST /v1/classify, POST /v1/digest, GET /health, with
// CORS for the configured origins.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 binds an ephemeral port. Returns the bound port. Throws
  // Error{kIoError}.
  int bind(const std::string& host, int port);
  // Serves until stop(); in-flight requests finish before this returns.
  void run();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace quickcue
