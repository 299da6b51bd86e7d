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

#include "quickcue/json_io.hpp"

#include <fstream>
#include <sstream>

#include "quickcue/error.hpp"

namespace quickcue {
namespace {

const Json& require(const Json& obj, const char* key, const std::string& path) {
  const std::string where = path.empty() ? key : path + "." + key;
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where, "missing required field");
  return *it;
}

std::string require_string(const Json& obj, const char* key,
                           const std::string& path) {
  const Json& v = require(obj, key, path);
  if (!v.is_string()) {
    throw SchemaError(path.empty() ? key : path + "." + key, "expected a string");
  }
  return v.get<std::string>();
}

}  // namespace

Json pairs_to_json(const PairSet& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs.to_vector()) {
    out.push_back(Json::array({std::string(display(p.aspect)),
                               std::string(display(p.sentiment))}));
  }
  return out;
}

PairSet pairs_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of pairs");
  PairSet out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = path + "[" + std::to_string(i) + "]";
    const Json& el = j[i];
    if (!el.is_array() || el.size() != 2 || !el[0].is_string() ||
        !el[1].is_string()) {
      throw SchemaError(where, "expected [aspect, sentiment]");
    }
    try {
      out.insert({parse_aspect(el[0].get<std::string>()),
                  parse_sentiment(el[1].get<std::string>())});
    } catch (const Error& e) {
      throw SchemaError(where, e.what());
    }
  }
  return out;
}

Json review_to_json(const Review& r) {
  Json out;
  out["id"] = r.id;
  out["text"] = r.text;
  if (r.rating) out["rating"] = *r.rating;
  if (r.date) out["date"] = format_iso_date(*r.date);
  if (r.author) out["author"] = *r.author;
  return out;
}

Review review_from_json(const Json& j, const std::string& path) {
  Review r;
  r.id = require_string(j, "id", path);
  r.text = require_string(j, "text", path);
  if (auto it = j.find("rating"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      throw SchemaError(path + ".rating", "expected an integer");
    }
    r.rating = it->get<int>();
  }
  if (auto it = j.find("date"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError(path + ".date", "expected a string");
    r.date = parse_iso_date(it->get<std::string>());
    if (!r.date) {
      throw SchemaError(path + ".date", "expected an ISO-8601 date (YYYY-MM-DD)");
    }
  }
  if (auto it = j.find("author"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError(path + ".author", "expected a string");
    r.author = it->get<std::string>();
  }
  return r;
}

Json review_set_to_json(const RestaurantReviewSet& set) {
  Json out;
  out["restaurant_id"] = set.restaurant_id;
  Json reviews = Json::array();
  for (const auto& r : set.reviews) reviews.push_back(review_to_json(r));
  out["reviews"] = std::move(reviews);
  return out;
}

RestaurantReviewSet review_set_from_json(const Json& j) {
  RestaurantReviewSet set;
  set.restaurant_id = require_string(j, "restaurant_id", "");
  const Json& reviews = require(j, "reviews", "");
  if (!reviews.is_array()) throw SchemaError("reviews", "expected an array");
  set.reviews.reserve(reviews.size());
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    set.reviews.push_back(
        review_from_json(reviews[i], "reviews[" + std::to_string(i) + "]"));
  }
  validate(set);
  return set;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kIoError, "invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write file: " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

}  // namespace quickcue
