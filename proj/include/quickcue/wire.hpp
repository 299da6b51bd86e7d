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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quickcue/error.hpp"
#include "quickcue/gateway.hpp"
#include "quickcue/json_io.hpp"
#include "quickcue/pipeline.hpp"

// Documents served by the REST endpoints and written by the CLI. Key order is
// fixed so serialized documents are byte-comparable.
namespace quickcue {

// UTC, second precision: 2026-06-30T12:00:00Z
std::string format_timestamp(std::chrono::system_clock::time_point t);

Json classify_response_to_json(const std::string& restaurant_id,
                               const std::vector<ClassifiedReview>& classified,
                               GatewayMode mode, const std::string& prompt_version);

Json digest_to_json(const DigestHierarchy& digest, GatewayMode mode);

Json health_to_json(bool credential_available, GatewayMode mode,
                    const std::string& prompt_version, double uptime_seconds);

Json error_to_json(ErrorCode code, const std::string& message,
                   const std::optional<std::string>& path = std::nullopt);

// Two-space indented JSON with a trailing newline.
std::string serialize(const Json& document);

}  // namespace quickcue
