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

#include <array>
#include <bitset>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quickcue {

enum class Aspect { kFood, kAmbiance, kHygiene, kCustomerService, kPricing };
enum class Sentiment { kPositive, kNegative };

inline constexpr std::array<Aspect, 5> kAllAspects = {
    Aspect::kFood, Aspect::kAmbiance, Aspect::kHygiene,
    Aspect::kCustomerService, Aspect::kPricing};

inline constexpr std::array<Sentiment, 2> kAllSentiments = {
    Sentiment::kPositive, Sentiment::kNegative};

std::string_view display(Aspect aspect);
std::string_view display(Sentiment sentiment);

// Case-insensitive after trimming and collapsing internal whitespace.
// Throws Error{kUnknownAspect} / Error{kUnknownSentiment}.
Aspect parse_aspect(std::string_view label);
Sentiment parse_sentiment(std::string_view label);

struct AspectSentimentPair {
  Aspect aspect;
  Sentiment sentiment;

  friend constexpr bool operator==(const AspectSentimentPair&,
                                   const AspectSentimentPair&) = default;
  friend constexpr auto operator<=>(const AspectSentimentPair&,
                                    const AspectSentimentPair&) = default;

  // Dense index in [0, 10): aspect-major, positive before negative.
  constexpr std::size_t index() const noexcept {
    return static_cast<std::size_t>(aspect) * 2 +
           static_cast<std::size_t>(sentiment);
  }
  static constexpr AspectSentimentPair from_index(std::size_t i) noexcept {
    return {static_cast<Aspect>(i / 2), static_cast<Sentiment>(i % 2)};
  }
};

inline constexpr std::size_t kPairCount = 10;

// The full Aspect x Sentiment universe in index order.
std::array<AspectSentimentPair, kPairCount> all_pairs();

// Set of aspect-sentiment pairs. Backed by a 10-bit mask, so duplicates and
// out-of-universe members are unrepresentable; iteration is in index order.
class PairSet {
 public:
  PairSet() = default;
  PairSet(std::initializer_list<AspectSentimentPair> pairs) {
    for (const auto& p : pairs) insert(p);
  }

  void insert(AspectSentimentPair p) { bits_.set(p.index()); }
  void erase(AspectSentimentPair p) { bits_.reset(p.index()); }
  bool contains(AspectSentimentPair p) const { return bits_.test(p.index()); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  std::vector<AspectSentimentPair> to_vector() const;

  PairSet operator&(const PairSet& other) const {
    return PairSet(bits_ & other.bits_);
  }
  PairSet operator|(const PairSet& other) const {
    return PairSet(bits_ | other.bits_);
  }
  friend bool operator==(const PairSet&, const PairSet&) = default;

  unsigned long mask() const { return bits_.to_ulong(); }
  static PairSet from_mask(unsigned long mask) {
    return PairSet(std::bitset<kPairCount>(mask));
  }

 private:
  explicit PairSet(std::bitset<kPairCount> bits) : bits_(bits) {}
  std::bitset<kPairCount> bits_;
};

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD; returns nullopt for anything else or an invalid day.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);

struct Review {
  std::string id;
  std::string text;
  std::optional<int> rating;
  std::optional<Date> date;
  std::optional<std::string> author;

  friend bool operator==(const Review&, const Review&) = default;
};

struct ClassifiedReview {
  Review review;
  PairSet pairs;
  // Set when the response could not be turned into pairs; pairs is then empty.
  std::optional<std::string> diagnostic;
};

struct RestaurantReviewSet {
  std::string restaurant_id;
  std::vector<Review> reviews;
};

// Checks ids are non-empty and pairwise distinct and ratings lie in 1..5.
// Throws SchemaError naming the offending review.
void validate(const RestaurantReviewSet& set);

}  // namespace quickcue
