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

#include <optional>
#include <string>
#include <string_view>

#include "quickcue/domain.hpp"

namespace quickcue {

struct PreprocessConfig {
  // Reviews dated more than this many days before `today` are dropped.
  // nullopt disables the age rule. Must be >= 1 when set.
  std::optional<int> max_age_days = 365;
  // Counted in non-whitespace code points of the cleaned text.
  int min_text_length = 1;
};

// Emoji, pictographs, variation selectors, joiners and non-whitespace control
// characters. Exposed for tests and for the mock tokenizer.
bool is_removed_glyph(char32_t cp);

// Removes emoji/pictograph and control code points, collapses every
// whitespace run (newlines included) to one space and trims. Invalid UTF-8
// bytes are dropped. Idempotent.
std::string clean_text(std::string_view raw);

// Order-preserving subsequence of `set` whose cleaned text is long enough and
// whose date (if any) is within the age window. Surviving texts are replaced
// by their cleaned form. Undated reviews are never dropped for age.
RestaurantReviewSet filter_reviews(const RestaurantReviewSet& set,
                                   const PreprocessConfig& cfg,
                                   const Date& today);

// Throws Error{kConfigError} when the invariants above do not hold.
void validate(const PreprocessConfig& cfg);

}  // namespace quickcue
