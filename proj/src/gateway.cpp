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

#include "quickcue/gateway.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "quickcue/error.hpp"
#include "quickcue/hash.hpp"
#include "quickcue/log.hpp"
#include "quickcue/text.hpp"

namespace quickcue {

std::string_view to_string(GatewayMode mode) {
  return mode == GatewayMode::kLive ? "live" : "mock";
}

GatewayMode parse_gateway_mode(std::string_view value) {
  const auto v = text::trim(value);
  if (text::iequals_ascii(v, "live")) return GatewayMode::kLive;
  if (text::iequals_ascii(v, "mock")) return GatewayMode::kMock;
  throw Error(ErrorCode::kConfigError,
              "gateway mode must be \"mock\" or \"live\", got \"" + std::string(value) + "\"");
}

void validate(const GatewayConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); };
  if (cfg.mode == GatewayMode::kLive) {
    if (cfg.base_url.empty()) fail("gateway.base_url is required in live mode");
    if (cfg.model_name.empty()) fail("gateway.model_name is required in live mode");
  }
  if (cfg.api_key_env.empty()) fail("gateway.api_key_env must be non-empty");
  if (cfg.max_parallel < 1) fail("gateway.max_parallel must be >= 1");
  if (cfg.max_retries < 0) fail("gateway.max_retries must be >= 0");
  if (!(cfg.timeout_seconds > 0)) fail("gateway.timeout_seconds must be > 0");
  if (cfg.mock_max_bullets < 1) fail("gateway.mock_max_bullets must be >= 1");
}

// ---------------------------------------------------------------------------

ResponseCache::ResponseCache(std::optional<std::filesystem::path> dir)
    : dir_(std::move(dir)) {
  if (!dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  if (ec) {
    logger()->warn("cache directory {} unavailable ({}); caching in memory only",
                   dir_->string(), ec.message());
    dir_.reset();
  }
}

std::string ResponseCache::key(const PromptText& prompt, GatewayMode mode,
                               std::string_view model_name) {
  std::string material = sha256_hex(prompt.text);
  material += '\n';
  material += prompt.prompt_version;
  material += '\n';
  material += to_string(mode);
  material += '\n';
  material += model_name;
  return sha256_hex(material);
}

std::optional<std::string> ResponseCache::get(const std::string& key) {
  std::lock_guard lock(mu_);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  if (!dir_) return std::nullopt;
  const auto path = *dir_ / (key + ".txt");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) {
    logger()->warn("cache read failed for {}", path.string());
    return std::nullopt;
  }
  auto [it, _] = entries_.emplace(key, buf.str());
  return it->second;
}

void ResponseCache::put(const std::string& key, const std::string& response) {
  std::lock_guard lock(mu_);
  entries_[key] = response;
  if (!dir_) return;
  const auto path = *dir_ / (key + ".txt");
  const auto tmp = *dir_ / (key + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << response;
    if (!out) {
      logger()->warn("cache write failed for {}", path.string());
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) logger()->warn("cache write failed for {}: {}", path.string(), ec.message());
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

// ---------------------------------------------------------------------------

Gateway::Gateway(GatewayConfig cfg, std::unique_ptr<Backend> backend)
    : cfg_(std::move(cfg)),
      backend_(std::move(backend)),
      cache_(cfg_.cache_dir ? std::optional<std::filesystem::path>(*cfg_.cache_dir)
                            : std::nullopt),
      slots_(std::max(cfg_.max_parallel, 1)) {}

std::unique_ptr<Gateway> Gateway::create(const GatewayConfig& cfg) {
  validate(cfg);
  std::unique_ptr<Backend> backend;
  if (cfg.mode == GatewayMode::kMock) {
    MockLexicon lexicon = cfg.lexicon_path
                              ? MockLexicon::from_json(read_json_file(*cfg.lexicon_path))
                              : MockLexicon::demo();
    backend = std::make_unique<MockBackend>(std::move(lexicon),
                                            static_cast<std::size_t>(cfg.mock_max_bullets));
  } else {
    backend = std::make_unique<LiveBackend>(cfg, make_http_transport());
  }
  return std::make_unique<Gateway>(cfg, std::move(backend));
}

bool Gateway::credential_available() const {
  if (cfg_.mode == GatewayMode::kMock) return true;
  const auto key = getenv_lookup(cfg_.api_key_env);
  return key && !key->empty();
}

std::string Gateway::complete(const PromptText& prompt) {
  const std::string key = ResponseCache::key(prompt, cfg_.mode, cfg_.model_name);
  if (auto hit = cache_.get(key)) {
    ++cache_hits_;
    return *hit;
  }
  std::string response;
  {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<>& s;
      ~Release() { s.release(); }
    } release{slots_};
    ++backend_calls_;
    response = backend_->complete(prompt);
  }
  cache_.put(key, response);
  return response;
}

}  // namespace quickcue
