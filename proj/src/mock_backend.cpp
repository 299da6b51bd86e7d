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

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "quickcue/error.hpp"
#include "quickcue/gateway.hpp"
#include "quickcue/resources.hpp"
#include "quickcue/text.hpp"

namespace quickcue {
namespace {

bool is_letter_byte(char c) {
  const auto b = static_cast<unsigned char>(c);
  return std::isalpha(b) || b >= 0x80;
}

bool is_segment_break(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';' || c == '\n';
}

bool is_contrastive(std::string_view word) {
  static constexpr std::string_view kWords[] = {"but",    "however", "although",
                                                "though", "whereas", "yet"};
  return std::any_of(std::begin(kWords), std::end(kWords),
                     [&](std::string_view w) { return text::iequals_ascii(w, word); });
}

// Strips separators left dangling at clause edges ("delicious," -> "delicious")
// and one leading article.
std::string tidy_segment(std::string_view raw) {
  std::string s = text::collapse_whitespace(raw);
  auto edge = [](char c) {
    return c == ',' || c == ':' || c == '-' || c == ' ' || c == '\t';
  };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && edge(s[b])) ++b;
  while (e > b && edge(s[e - 1])) --e;
  std::string out = s.substr(b, e - b);
  for (std::string_view article : {"the ", "a ", "an "}) {
    if (out.size() > article.size() &&
        text::iequals_ascii(std::string_view(out).substr(0, article.size()), article)) {
      out.erase(0, article.size());
      break;
    }
  }
  return out;
}

struct SegmentHits {
  std::vector<Aspect> aspects;
  bool positive = false;
  bool negative = false;
  std::vector<std::pair<std::string, std::string>> clues;  // (keyword, polarity word)
};

SegmentHits analyze(std::string_view segment, const MockLexicon& lexicon) {
  SegmentHits hits;
  std::vector<std::string> keywords;
  std::vector<std::string> polar;
  for (const auto& token : tokenize(segment)) {
    for (const auto& [aspect, words] : lexicon.aspect_keywords) {
      if (words.count(token)) {
        if (std::find(hits.aspects.begin(), hits.aspects.end(), aspect) ==
            hits.aspects.end()) {
          hits.aspects.push_back(aspect);
        }
        keywords.push_back(token);
      }
    }
    if (lexicon.positive_words.count(token)) {
      hits.positive = true;
      polar.push_back(token);
    }
    if (lexicon.negative_words.count(token)) {
      hits.negative = true;
      polar.push_back(token);
    }
  }
  for (const auto& k : keywords) {
    for (const auto& p : polar) hits.clues.emplace_back(k, p);
  }
  return hits;
}

PairSet pairs_of(const SegmentHits& hits) {
  PairSet out;
  for (Aspect a : hits.aspects) {
    if (hits.positive) out.insert({a, Sentiment::kPositive});
    if (hits.negative) out.insert({a, Sentiment::kNegative});
  }
  return out;
}

}  // namespace

std::vector<std::string> segment_review(std::string_view input) {
  std::vector<std::string> segments;
  std::string current;
  auto flush = [&] {
    std::string seg = tidy_segment(current);
    if (!seg.empty()) segments.push_back(std::move(seg));
    current.clear();
  };
  std::size_t i = 0;
  while (i < input.size()) {
    if (is_letter_byte(input[i])) {
      std::size_t j = i;
      while (j < input.size() && is_letter_byte(input[j])) ++j;
      const auto word = input.substr(i, j - i);
      if (is_contrastive(word)) {
        flush();
      } else {
        current += word;
      }
      i = j;
      continue;
    }
    if (is_segment_break(input[i])) {
      flush();
    } else {
      current += input[i];
    }
    ++i;
  }
  flush();
  return segments;
}

std::vector<std::string> tokenize(std::string_view segment) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < segment.size()) {
    if (!is_letter_byte(segment[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < segment.size() && is_letter_byte(segment[j])) ++j;
    tokens.push_back(text::to_lower_ascii(segment.substr(i, j - i)));
    i = j;
  }
  return tokens;
}

PairSet mock_classify(std::string_view review_text, const MockLexicon& lexicon) {
  PairSet out;
  for (const auto& seg : segment_review(review_text)) {
    out = out | pairs_of(analyze(seg, lexicon));
  }
  return out;
}

std::vector<std::string> mock_summarize(std::span<const std::string> review_texts,
                                        Aspect aspect, Sentiment sentiment,
                                        const MockLexicon& lexicon,
                                        std::size_t max_bullets) {
  struct Candidate {
    std::string text;
    std::size_t count;
    std::size_t first;
  };
  std::vector<Candidate> candidates;
  std::unordered_map<std::string, std::size_t> index;
  const AspectSentimentPair target{aspect, sentiment};
  for (const auto& review : review_texts) {
    for (auto& seg : segment_review(review)) {
      if (!pairs_of(analyze(seg, lexicon)).contains(target)) continue;
      const std::string key = text::to_lower_ascii(seg);
      auto [it, inserted] = index.emplace(key, candidates.size());
      if (inserted) {
        candidates.push_back({std::move(seg), 1, candidates.size()});
      } else {
        ++candidates[it->second].count;
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.count != b.count) return a.count > b.count;
                     return a.first < b.first;
                   });
  std::vector<std::string> bullets;
  for (auto& c : candidates) {
    if (bullets.size() >= max_bullets) break;
    bullets.push_back(std::move(c.text));
  }
  return bullets;
}

std::string mock_classify_response(std::string_view review_text,
                                   const MockLexicon& lexicon) {
  std::string clues;
  std::string reasoning;
  PairSet pairs;
  for (const auto& seg : segment_review(review_text)) {
    const SegmentHits hits = analyze(seg, lexicon);
    const PairSet found = pairs_of(hits);
    if (found.empty()) continue;
    pairs = pairs | found;
    for (const auto& [keyword, polar] : hits.clues) {
      if (!clues.empty()) clues += ", ";
      clues += "[" + keyword + ", " + polar + "]";
    }
    for (const auto& p : found.to_vector()) {
      if (!reasoning.empty()) reasoning += ' ';
      reasoning += "A ";
      reasoning += text::to_lower_ascii(display(p.sentiment));
      reasoning += " word co-occurs with a ";
      reasoning += display(p.aspect);
      reasoning += " keyword in the same clause, indicating a ";
      reasoning += text::to_lower_ascii(display(p.sentiment));
      reasoning += " sentiment for ";
      reasoning += text::to_lower_ascii(display(p.aspect));
      reasoning += '.';
    }
  }
  if (clues.empty()) clues = "(none)";
  if (reasoning.empty()) {
    reasoning = "No clause mentions a known aspect together with a sentiment word.";
  }
  return "CLUES: " + clues + "\nREASONING: " + reasoning +
         "\nASPECT-SENTIMENT Pairs: " + render_pairs(pairs) + "\n";
}

std::string MockBackend::complete(const PromptText& prompt) {
  switch (detect_task(prompt.text)) {
    case PromptTask::kClassify: {
      auto input = extract_classify_input(prompt.text);
      if (!input) break;
      return mock_classify_response(*input, lexicon_);
    }
    case PromptTask::kSummarize: {
      auto req = extract_summarize_request(prompt.text);
      if (!req) break;
      std::string out;
      for (const auto& b : mock_summarize(req->reviews, req->aspect, req->sentiment,
                                          lexicon_, max_bullets_)) {
        out += "- " + b + "\n";
      }
      return out;
    }
    case PromptTask::kUnknown:
      break;
  }
  throw ProviderError(0, 1, "mock backend cannot interpret the prompt");
}

// ---------------------------------------------------------------------------

MockLexicon MockLexicon::from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "lexicon must be an object");
  auto words = [](const Json& arr, const std::string& path) {
    if (!arr.is_array()) throw SchemaError(path, "expected an array of strings");
    std::set<std::string> out;
    for (const auto& w : arr) {
      if (!w.is_string()) throw SchemaError(path, "expected strings");
      out.insert(text::to_lower_ascii(text::trim(w.get<std::string>())));
    }
    return out;
  };
  MockLexicon lex;
  if (!j.contains("aspect_keywords") || !j["aspect_keywords"].is_object()) {
    throw SchemaError("aspect_keywords", "expected an object keyed by aspect");
  }
  for (const auto& [name, list] : j["aspect_keywords"].items()) {
    Aspect a{};
    try {
      a = parse_aspect(name);
    } catch (const Error& e) {
      throw SchemaError("aspect_keywords." + name, e.what());
    }
    lex.aspect_keywords[a] = words(list, "aspect_keywords." + name);
  }
  lex.positive_words = words(j.value("positive_words", Json::array()), "positive_words");
  lex.negative_words = words(j.value("negative_words", Json::array()), "negative_words");
  lex.validate();
  return lex;
}

MockLexicon MockLexicon::demo() {
  return from_json(Json::parse(resources::mock_lexicon()));
}

void MockLexicon::validate() const {
  std::map<std::string, Aspect> owner;
  for (const auto& [aspect, words] : aspect_keywords) {
    for (const auto& w : words) {
      auto [it, inserted] = owner.emplace(w, aspect);
      if (!inserted) {
        throw Error(ErrorCode::kConfigError,
                    "lexicon keyword \"" + w + "\" listed under both " +
                        std::string(display(it->second)) + " and " +
                        std::string(display(aspect)));
      }
    }
  }
  for (const auto& w : positive_words) {
    if (negative_words.count(w)) {
      throw Error(ErrorCode::kConfigError,
                  "lexicon word \"" + w + "\" is both positive and negative");
    }
  }
}

}  // namespace quickcue
