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

#include "quickcue/service.hpp"

#include <httplib.h>

#include "quickcue/log.hpp"
#include "quickcue/pipeline.hpp"
#include "quickcue/preprocess.hpp"
#include "quickcue/schema.hpp"
#include "quickcue/wire.hpp"

namespace quickcue {
namespace {

HttpResponse error_response(const Error& e) {
  std::optional<std::string> path;
  if (const auto* se = dynamic_cast<const SchemaError*>(&e)) path = se->path();
  return {http_status_for(e.code()), serialize(error_to_json(e.code(), e.what(), path))};
}

template <typename Fn>
HttpResponse guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    logger()->error("unexpected failure: {}", e.what());
    return {500, serialize(Json{{"error", Json{{"code", "Internal"}, {"message", e.what()}}}})};
  }
}

}  // namespace

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaError:
    case ErrorCode::kInvalidReview:
      return 400;
    case ErrorCode::kRequestTooLarge:
      return 413;
    case ErrorCode::kGatewayUnavailable:
    case ErrorCode::kCredentialMissing:
    case ErrorCode::kProviderError:
    case ErrorCode::kTimeout:
      return 502;
    default:
      return 500;
  }
}

bool origin_allowed(const std::vector<std::string>& allow_list, std::string_view origin) {
  if (origin.empty()) return false;
  for (const auto& entry : allow_list) {
    if (entry == origin) return true;
    if (entry.size() > 4 && entry.ends_with("://*")) {
      const std::string_view scheme(entry.data(), entry.size() - 1);  // keep "://"
      if (origin.starts_with(scheme) && origin.size() > scheme.size()) return true;
    }
  }
  return false;
}

Service::Service(ServiceConfig cfg, std::shared_ptr<LlmClient> client, PromptEngine engine,
                 Clock clock, CredentialCheck credential)
    : cfg_(std::move(cfg)),
      client_(std::move(client)),
      engine_(std::move(engine)),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::system_clock::now(); })),
      credential_(credential ? std::move(credential) : CredentialCheck([] { return true; })),
      started_(std::chrono::steady_clock::now()) {}

std::unique_ptr<Service> Service::create(const ServiceConfig& cfg, Clock clock) {
  validate(cfg);
  auto classification = cfg.example_store_paths.classification
                            ? classification_examples_from_json(
                                  read_json_file(*cfg.example_store_paths.classification))
                            : default_classification_examples();
  auto summarization = cfg.example_store_paths.summarization
                           ? summarization_examples_from_json(
                                 read_json_file(*cfg.example_store_paths.summarization))
                           : default_summarization_examples();
  std::shared_ptr<Gateway> gateway = Gateway::create(cfg.gateway);
  CredentialCheck credential = [gateway] { return gateway->credential_available(); };
  return std::make_unique<Service>(cfg, gateway,
                                   PromptEngine(std::move(classification), std::move(summarization)),
                                   std::move(clock), std::move(credential));
}

RestaurantReviewSet Service::parse_request(std::string_view body) const {
  Json j = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw SchemaError("", "request body is not valid JSON");
  if (j.is_object()) {
    const auto reviews = j.find("reviews");
    if (reviews != j.end() && reviews->is_array() &&
        reviews->size() > cfg_.max_reviews_per_request) {
      throw Error(ErrorCode::kRequestTooLarge,
                  std::to_string(reviews->size()) + " reviews exceed the limit of " +
                      std::to_string(cfg_.max_reviews_per_request));
    }
  }
  validate_json(review_set_schema_json(), j);
  return review_set_from_json(j);
}

Date Service::today() const {
  if (cfg_.reference_date) return *cfg_.reference_date;
  return Date(std::chrono::floor<std::chrono::days>(clock_()));
}

HttpResponse Service::classify(std::string_view body) const {
  return guarded([&] {
    RestaurantReviewSet set = parse_request(body);
    for (auto& r : set.reviews) r.text = clean_text(r.text);
    const auto result = classify_reviews(set, *client_, engine_);
    logger()->info("classified {} reviews for {}", set.reviews.size(), set.restaurant_id);
    return HttpResponse{200, serialize(classify_response_to_json(
                                 set.restaurant_id, result.reviews,
                                 cfg_.gateway.mode, engine_.version()))};
  });
}

HttpResponse Service::digest(std::string_view body) const {
  return guarded([&] {
    const RestaurantReviewSet set = parse_request(body);
    const DigestHierarchy d =
        build_digest(set, cfg_.pipeline, *client_, engine_, today(), clock_());
    logger()->info("digest for {}: {} reviews, {} diagnostics", set.restaurant_id,
                   set.reviews.size(), d.diagnostics.size());
    return HttpResponse{200, serialize(digest_to_json(d, cfg_.gateway.mode))};
  });
}

HttpResponse Service::health() const {
  const std::chrono::duration<double> up = std::chrono::steady_clock::now() - started_;
  return {200, serialize(health_to_json(credential_(), cfg_.gateway.mode, engine_.version(),
                                        up.count()))};
}

// ---------------------------------------------------------------------------

struct HttpServer::Impl {
  const Service& service;
  httplib::Server server;
  bool bound = false;

  explicit Impl(const Service& s) : service(s) {}

  void apply_cors(const httplib::Request& req, httplib::Response& res) const {
    const std::string origin = req.get_header_value("Origin");
    if (!origin_allowed(service.config().cors_allowed_origins, origin)) return;
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Vary", "Origin");
  }

  void reply(const httplib::Request& req, httplib::Response& res, const HttpResponse& r) const {
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
    apply_cors(req, res);
  }
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  Impl* impl = impl_.get();
  srv.set_payload_max_length(64u << 20);
  // The library default sets SO_REUSEPORT, which lets a second server share a
  // busy port.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  srv.Post("/v1/classify", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->reply(req, res, impl->service.classify(req.body));
  });
  srv.Post("/v1/digest", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->reply(req, res, impl->service.digest(req.body));
  });
  srv.Get("/health", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->reply(req, res, impl->service.health());
  });
  srv.Options(R"(/.*)", [impl](const httplib::Request& req, httplib::Response& res) {
    res.status = 204;
    impl->apply_cors(req, res);
    if (res.has_header("Access-Control-Allow-Origin")) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Max-Age", "600");
    }
  });
  srv.set_error_handler([impl](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const ErrorCode code =
        res.status == 413 ? ErrorCode::kRequestTooLarge : ErrorCode::kSchemaError;
    const std::string msg = res.status == 404 ? "no such endpoint: " + req.path
                                              : "request rejected with HTTP " +
                                                    std::to_string(res.status);
    res.set_content(serialize(error_to_json(code, msg)), "application/json; charset=utf-8");
    impl->apply_cors(req, res);
  });
  srv.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    logger()->info("{} {} -> {}", req.method, req.path, res.status);
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound_port = port;
  bool ok = false;
  if (port == 0) {
    bound_port = impl_->server.bind_to_any_port(host);
    ok = bound_port > 0;
  } else {
    ok = impl_->server.bind_to_port(host, port);
  }
  if (!ok) {
    throw Error(ErrorCode::kIoError,
                "cannot listen on " + host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return bound_port;
}

void HttpServer::run() {
  if (!impl_->bound) throw Error(ErrorCode::kIoError, "server is not bound");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace quickcue
