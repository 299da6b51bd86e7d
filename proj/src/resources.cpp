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

#include "quickcue/resources.hpp"

namespace quickcue::resources {
namespace {
#include "quickcue/resources.inc"
}  // namespace

std::string_view classification_examples() { return k_classification_examples; }
std::string_view summarization_examples() { return k_summarization_examples; }
std::string_view mock_lexicon() { return k_mock_lexicon; }
std::string_view review_set_schema() { return k_review_set_schema; }
std::string_view classify_response_schema() { return k_classify_response_schema; }
std::string_view digest_schema() { return k_digest_schema; }
std::string_view health_schema() { return k_health_schema; }
std::string_view error_schema() { return k_error_schema; }

}  // namespace quickcue::resources
