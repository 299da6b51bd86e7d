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

#include "quickcue/wire.hpp"

#include <ctime>

namespace quickcue {
namespace {

Json summary_to_json(const FocusedSummary& s) {
  return Json{{"sentiment", display(s.pair.sentiment)},
              {"bullets", s.bullets},
              {"source_review_ids", s.source_review_ids}};
}

Json diagnostic_to_json(const Diagnostic& d) {
  Json out;
  out["stage"] = d.stage == Diagnostic::Stage::kClassify ? "classify" : "summarize";
  if (d.review_id) out["review_id"] = *d.review_id;
  if (d.pair) {
    out["aspect"] = display(d.pair->aspect);
    out["sentiment"] = display(d.pair->sentiment);
  }
  out["code"] = to_string(d.code);
  out["message"] = d.message;
  return out;
}

}  // namespace

std::string format_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json classify_response_to_json(const std::string& restaurant_id,
                               const std::vector<ClassifiedReview>& classified,
                               GatewayMode mode, const std::string& prompt_version) {
  Json items = Json::array();
  for (const auto& cr : classified) {
    Json item{{"review_id", cr.review.id}, {"pairs", pairs_to_json(cr.pairs)}};
    if (cr.diagnostic) item["diagnostic"] = *cr.diagnostic;
    items.push_back(std::move(item));
  }
  return Json{{"restaurant_id", restaurant_id},
              {"mode", to_string(mode)},
              {"prompt_version", prompt_version},
              {"classifications", std::move(items)}};
}

Json digest_to_json(const DigestHierarchy& digest, GatewayMode mode) {
  Json aspects = Json::array();
  for (const auto& section : digest.aspects) {
    aspects.push_back(Json{{"aspect", display(section.aspect)},
                           {"positive", summary_to_json(section.positive)},
                           {"negative", summary_to_json(section.negative)}});
  }
  Json diagnostics = Json::array();
  for (const auto& d : digest.diagnostics) diagnostics.push_back(diagnostic_to_json(d));
  return Json{{"restaurant_id", digest.restaurant_id},
              {"generated_at", format_timestamp(digest.generated_at)},
              {"prompt_version", digest.prompt_version},
              {"mode", to_string(mode)},
              {"aspects", std::move(aspects)},
              {"diagnostics", std::move(diagnostics)}};
}

Json health_to_json(bool credential_available, GatewayMode mode,
                    const std::string& prompt_version, double uptime_seconds) {
  return Json{{"status", credential_available ? "ok" : "degraded"},
              {"mode", to_string(mode)},
              {"prompt_version", prompt_version},
              {"uptime_seconds", uptime_seconds}};
}

Json error_to_json(ErrorCode code, const std::string& message,
                   const std::optional<std::string>& path) {
  Json err{{"code", to_string(code)}, {"message", message}};
  if (path) err["path"] = *path;
  return Json{{"error", std::move(err)}};
}

std::string serialize(const Json& document) {
  return document.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

}  // namespace quickcue
