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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quickcue/domain.hpp"
#include "quickcue/gateway.hpp"
#include "quickcue/json_io.hpp"
#include "quickcue/pipeline.hpp"

namespace quickcue {

inline constexpr std::string_view kConfigEnv = "QUICKCUE_CONFIG";

struct ExampleStorePaths {
  std::optional<std::string> classification;  // compiled-in store when unset
  std::optional<std::string> summarization;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8787;
  GatewayConfig gateway;
  PipelineConfig pipeline;
  ExampleStorePaths example_store_paths;
  // Exact origins, or "scheme://*" to allow every origin of a scheme.
  std::vector<std::string> cors_allowed_origins = {"chrome-extension://*",
                                                   "moz-extension://*"};
  std::size_t max_reviews_per_request = 500;
  // Pins "today" for the recency filter; the current UTC date when unset.
  std::optional<Date> reference_date;
};

// Reads the JSON config format documented in the README. Unknown keys are
// rejected. Relative paths resolve against `base_dir`. Throws
// Error{kConfigError}.
ServiceConfig config_from_json(const Json& j, const std::string& base_dir = "");

// Reads `path`; file problems raise Error{kIoError} naming the path.
ServiceConfig load_config(const std::string& path);

// Explicit path, else $QUICKCUE_CONFIG, else none.
std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path);

// Defaults when no config file is found.
ServiceConfig load_effective_config(const std::optional<std::string>& explicit_path);

// Port range, nested section invariants and existence of every referenced
// file. Throws Error{kConfigError}.
void validate(const ServiceConfig& cfg);

}  // namespace quickcue
