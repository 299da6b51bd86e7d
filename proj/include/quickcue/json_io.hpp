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

#include <json.hpp>
#include <string>

#include "quickcue/domain.hpp"

// JSON conversions for the domain value types. All writers produce
// ordered_json so documents serialize with a stable key order.
namespace quickcue {

using Json = nlohmann::ordered_json;

// [["Food", "Positive"], ...] in pair index order.
Json pairs_to_json(const PairSet& pairs);
// Accepts the same list-of-lists notation. `path` prefixes SchemaError paths.
PairSet pairs_from_json(const Json& j, const std::string& path);

Json review_to_json(const Review& review);
Review review_from_json(const Json& j, const std::string& path);

Json review_set_to_json(const RestaurantReviewSet& set);
// Throws SchemaError on missing or mistyped fields and on domain invariant
// violations (duplicate ids, ratings outside 1..5).
RestaurantReviewSet review_set_from_json(const Json& j);

// Reads and parses a JSON file. Throws Error{kIoError} naming the path.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace quickcue
