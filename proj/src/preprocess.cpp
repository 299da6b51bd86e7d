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

#include "quickcue/preprocess.hpp"

#include <chrono>

#include "quickcue/error.hpp"
#include "quickcue/text.hpp"

namespace quickcue {
namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

// Emoji and pictograph blocks plus the invisible code points emoji sequences
// are built from (joiners, variation selectors, keycaps, tags).
constexpr Range kRemovedRanges[] = {
    {0x200B, 0x200B},    // zero width space
    {0x200D, 0x200D},    // zero width joiner
    {0x2060, 0x2060},    // word joiner
    {0x20E3, 0x20E3},    // combining enclosing keycap
    {0x231A, 0x231B},    {0x2328, 0x2328},  {0x23CF, 0x23CF},
    {0x23E9, 0x23F3},    {0x23F8, 0x23FA},
    {0x2600, 0x27BF},    // miscellaneous symbols, dingbats
    {0x2B00, 0x2BFF},    // miscellaneous symbols and arrows
    {0x3030, 0x3030},    {0x303D, 0x303D},  {0x3297, 0x3297},
    {0x3299, 0x3299},
    {0xFE00, 0xFE0F},    // variation selectors
    {0xFEFF, 0xFEFF},    // byte order mark
    {0xFFFD, 0xFFFD},    // replacement for invalid input bytes
    {0x1F000, 0x1FBFF},  // all supplementary emoji/pictograph blocks
    {0xE0020, 0xE007F},  // tag sequence characters
};

bool is_control(char32_t cp) {
  return cp < 0x20 || (cp >= 0x7F && cp <= 0x9F);
}

}  // namespace

bool is_removed_glyph(char32_t cp) {
  if (is_control(cp)) return !text::is_unicode_space(cp);
  for (const Range& r : kRemovedRanges) {
    if (cp >= r.lo && cp <= r.hi) return true;
  }
  return false;
}

std::string clean_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    const std::size_t start = pos;
    const char32_t cp = text::decode_utf8(raw, pos);
    if (is_removed_glyph(cp)) continue;
    if (text::is_unicode_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.append(raw.substr(start, pos - start));
  }
  return out;
}

RestaurantReviewSet filter_reviews(const RestaurantReviewSet& set,
                                   const PreprocessConfig& cfg,
                                   const Date& today) {
  using std::chrono::sys_days;
  RestaurantReviewSet out{set.restaurant_id, {}};
  for (const Review& review : set.reviews) {
    std::string cleaned = clean_text(review.text);
    int visible = 0;
    for (std::size_t pos = 0; pos < cleaned.size();) {
      if (!text::is_unicode_space(text::decode_utf8(cleaned, pos))) ++visible;
    }
    if (visible < cfg.min_text_length) continue;
    if (review.date && cfg.max_age_days) {
      const auto age = (sys_days{today} - sys_days{*review.date}).count();
      if (age > *cfg.max_age_days) continue;
    }
    Review kept = review;
    kept.text = std::move(cleaned);
    out.reviews.push_back(std::move(kept));
  }
  return out;
}

void validate(const PreprocessConfig& cfg) {
  if (cfg.max_age_days && *cfg.max_age_days < 1) {
    throw Error(ErrorCode::kConfigError, "preprocess.max_age_days must be >= 1");
  }
  if (cfg.min_text_length < 0) {
    throw Error(ErrorCode::kConfigError,
                "preprocess.min_text_length must be >= 0");
  }
}

}  // namespace quickcue
