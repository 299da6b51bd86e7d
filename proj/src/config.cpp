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

#include "quickcue/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <set>

#include "quickcue/error.hpp"

namespace quickcue {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); }

// Typed access to one config object; rejects keys nobody asked about.
class Section {
 public:
  Section(const Json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) fail(label("") + " must be an object");
  }

  const Json* get(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  template <typename T>
  void read(const char* key, T& dst) {
    const Json* v = get(key);
    if (!v) return;
    if constexpr (std::is_same_v<T, std::string>) {
      if (!v->is_string()) fail(label(key) + " must be a string");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v->is_number()) fail(label(key) + " must be a number");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v->is_number_integer()) fail(label(key) + " must be an integer");
      if (std::is_unsigned_v<T> && v->get<long long>() < 0) {
        fail(label(key) + " must be non-negative");
      }
    }
    dst = v->get<T>();
  }

  template <typename T>
  void read(const char* key, std::optional<T>& dst) {
    const Json* v = get(key);
    if (!v) {
      if (j_.contains(key)) dst.reset();  // explicit null disables
      return;
    }
    T value{};
    read(key, value);
    dst = value;
  }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) {
        if (key == "api_key") {
          fail(label(key) + ": credentials are read from the environment only");
        }
        fail("unknown config key " + label(key));
      }
    }
  }

  std::string label(const std::string& key) const {
    if (name_.empty()) return key.empty() ? "config" : key;
    return key.empty() ? name_ : name_ + "." + key;
  }

 private:
  const Json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

std::optional<std::string> resolve(const std::optional<std::string>& path,
                                   const std::string& base_dir) {
  if (!path || path->empty() || base_dir.empty()) return path;
  const fs::path p(*path);
  if (p.is_absolute()) return path;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

ServiceConfig config_from_json(const Json& j, const std::string& base_dir) {
  ServiceConfig cfg;
  Section top(j, "");
  top.read("host", cfg.host);
  top.read("port", cfg.port);
  top.read("max_reviews_per_request", cfg.max_reviews_per_request);

  if (const Json* g = top.get("gateway")) {
    Section s(*g, "gateway");
    std::string mode = std::string(to_string(cfg.gateway.mode));
    s.read("mode", mode);
    cfg.gateway.mode = parse_gateway_mode(mode);
    s.read("base_url", cfg.gateway.base_url);
    s.read("model_name", cfg.gateway.model_name);
    s.read("api_key_env", cfg.gateway.api_key_env);
    s.read("max_parallel", cfg.gateway.max_parallel);
    s.read("max_retries", cfg.gateway.max_retries);
    s.read("timeout_seconds", cfg.gateway.timeout_seconds);
    s.read("temperature", cfg.gateway.temperature);
    s.read("cache_dir", cfg.gateway.cache_dir);
    s.read("lexicon_path", cfg.gateway.lexicon_path);
    s.read("mock_max_bullets", cfg.gateway.mock_max_bullets);
    s.finish();
  }
  if (const Json* p = top.get("preprocess")) {
    Section s(*p, "preprocess");
    s.read("max_age_days", cfg.pipeline.preprocess.max_age_days);
    s.read("min_text_length", cfg.pipeline.preprocess.min_text_length);
    s.finish();
  }
  if (const Json* p = top.get("summarize")) {
    Section s(*p, "summarize");
    s.read("max_reviews_per_bucket", cfg.pipeline.summarize.max_reviews_per_bucket);
    s.read("max_bullets", cfg.pipeline.summarize.max_bullets);
    s.finish();
  }
  if (const Json* p = top.get("example_store_paths")) {
    Section s(*p, "example_store_paths");
    s.read("classification", cfg.example_store_paths.classification);
    s.read("summarization", cfg.example_store_paths.summarization);
    s.finish();
  }
  if (const Json* c = top.get("cors_allowed_origins")) {
    if (!c->is_array()) fail("cors_allowed_origins must be an array of strings");
    cfg.cors_allowed_origins.clear();
    for (const auto& o : *c) {
      if (!o.is_string()) fail("cors_allowed_origins must be an array of strings");
      cfg.cors_allowed_origins.push_back(o.get<std::string>());
    }
  }
  std::optional<std::string> reference_date;
  top.read("reference_date", reference_date);
  if (reference_date) {
    cfg.reference_date = parse_iso_date(*reference_date);
    if (!cfg.reference_date) fail("reference_date must be a YYYY-MM-DD date");
  }
  top.finish();

  cfg.gateway.cache_dir = resolve(cfg.gateway.cache_dir, base_dir);
  cfg.gateway.lexicon_path = resolve(cfg.gateway.lexicon_path, base_dir);
  cfg.example_store_paths.classification =
      resolve(cfg.example_store_paths.classification, base_dir);
  cfg.example_store_paths.summarization =
      resolve(cfg.example_store_paths.summarization, base_dir);
  return cfg;
}

ServiceConfig load_config(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return config_from_json(j, fs::path(path).parent_path().string());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return explicit_path;
  if (const char* env = std::getenv(std::string(kConfigEnv).c_str()); env && *env) {
    return std::string(env);
  }
  return std::nullopt;
}

ServiceConfig load_effective_config(const std::optional<std::string>& explicit_path) {
  const auto path = resolve_config_path(explicit_path);
  return path ? load_config(*path) : ServiceConfig{};
}

void validate(const ServiceConfig& cfg) {
  if (cfg.port < 0 || cfg.port > 65535) fail("port must be within 0..65535 (0 picks a free port)");
  if (cfg.host.empty()) fail("host must be non-empty");
  if (cfg.max_reviews_per_request < 1) fail("max_reviews_per_request must be >= 1");
  validate(cfg.gateway);
  validate(cfg.pipeline.preprocess);
  validate(cfg.pipeline.summarize);
  auto must_exist = [](const std::optional<std::string>& path, const char* what) {
    if (path && !fs::is_regular_file(*path)) {
      fail(std::string(what) + " file not found: " + *path);
    }
  };
  must_exist(cfg.example_store_paths.classification, "example_store_paths.classification");
  must_exist(cfg.example_store_paths.summarization, "example_store_paths.summarization");
  must_exist(cfg.gateway.lexicon_path, "gateway.lexicon_path");
  for (const auto& origin : cfg.cors_allowed_origins) {
    if (origin.empty() || origin == "*") {
      fail("cors_allowed_origins entries must name an origin or a scheme (\"scheme://*\")");
    }
  }
}

}  // namespace quickcue
