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

#include "quickcue/domain.hpp"

#include <charconv>
#include <cstdio>
#include <unordered_set>

#include "quickcue/error.hpp"
#include "quickcue/text.hpp"

namespace quickcue {

std::string_view display(Aspect aspect) {
  switch (aspect) {
    case Aspect::kFood: return "Food";
    case Aspect::kAmbiance: return "Ambiance";
    case Aspect::kHygiene: return "Hygiene";
    case Aspect::kCustomerService: return "Customer Service";
    case Aspect::kPricing: return "Pricing";
  }
  return {};
}

std::string_view display(Sentiment sentiment) {
  return sentiment == Sentiment::kPositive ? "Positive" : "Negative";
}

Aspect parse_aspect(std::string_view label) {
  const std::string normalized = text::collapse_whitespace(label);
  for (Aspect a : kAllAspects) {
    if (text::iequals_ascii(normalized, display(a))) return a;
  }
  throw Error(ErrorCode::kUnknownAspect,
              "unknown aspect \"" + std::string(label) + "\"");
}

Sentiment parse_sentiment(std::string_view label) {
  const std::string normalized = text::collapse_whitespace(label);
  for (Sentiment s : kAllSentiments) {
    if (text::iequals_ascii(normalized, display(s))) return s;
  }
  throw Error(ErrorCode::kUnknownSentiment,
              "unknown sentiment \"" + std::string(label) + "\"");
}

std::array<AspectSentimentPair, kPairCount> all_pairs() {
  std::array<AspectSentimentPair, kPairCount> out{};
  for (std::size_t i = 0; i < kPairCount; ++i) {
    out[i] = AspectSentimentPair::from_index(i);
  }
  return out;
}

std::vector<AspectSentimentPair> PairSet::to_vector() const {
  std::vector<AspectSentimentPair> out;
  out.reserve(size());
  for (std::size_t i = 0; i < kPairCount; ++i) {
    if (bits_.test(i)) out.push_back(AspectSentimentPair::from_index(i));
  }
  return out;
}

std::optional<Date> parse_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto parse = [](std::string_view part, auto& value) {
    for (char c : part) {
      if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    return ec == std::errc{} && ptr == part.data() + part.size();
  };
  if (!parse(s.substr(0, 4), y) || !parse(s.substr(5, 2), m) ||
      !parse(s.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

void validate(const RestaurantReviewSet& set) {
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < set.reviews.size(); ++i) {
    const Review& r = set.reviews[i];
    const std::string where = "reviews[" + std::to_string(i) + "]";
    if (r.id.empty()) {
      throw SchemaError(where + ".id", "review id must be non-empty");
    }
    if (!seen.insert(r.id).second) {
      throw SchemaError(where + ".id", "duplicate review id \"" + r.id + "\"");
    }
    if (r.rating && (*r.rating < 1 || *r.rating > 5)) {
      throw SchemaError(where + ".rating", "rating must be in 1..5");
    }
  }
}

}  // namespace quickcue
