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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quickcue/domain.hpp"
#include "quickcue/json_io.hpp"

namespace quickcue {

// One clue-and-reasoning demonstration for the joint classifier.
struct FewShotExample {
  std::string input_text;
  PairSet expected_pairs;
  std::optional<std::string> clues;
  std::optional<std::string> reasoning;
  // Free-form provenance note carried through from the store file.
  std::optional<std::string> origin;
};

// One focused-summary demonstration.
struct SummaryFewShotExample {
  std::vector<std::string> input_reviews;
  Aspect aspect;
  Sentiment sentiment;
  std::vector<std::string> bullets;
};

struct PromptText {
  std::string text;
  // Hash of the template and example store; independent of the review text.
  std::string prompt_version;
};

// ---------------------------------------------------------------------------
// Pair lists

// [["Food", "Positive"],["Customer Service", "Negative"]] in pair index order.
std::string render_pairs(const PairSet& pairs);

// Finds the last top-level list-of-lists in `raw_llm_output` and parses it.
// Prose, clue lists and other bracketed text before it are ignored. Strings
// may carry a comma before the closing quote ("Food,") and separating commas
// between the two members are optional.
//
// Throws Error with kNoPairListFound, kMalformedPair, kUnknownAspect or
// kUnknownSentiment; the latter three name the offending element.
PairSet parse_pair_list(std::string_view raw_llm_output);

// Lines starting with -, *, +, a bullet glyph and/or "1." / "1)" numbering,
// with the marker stripped. Throws Error{kNoBulletsFound} when non-blank input
// yields no bullets; blank input yields an empty list.
std::vector<std::string> parse_bullets(std::string_view raw_llm_output);

// ---------------------------------------------------------------------------
// Prompt construction

// Throws Error{kEmptyReview} for an empty review_text.
PromptText build_carp_prompt(std::string_view review_text,
                             std::span<const FewShotExample> examples);

// Throws Error{kEmptyBucket} for an empty review list.
PromptText build_dsp_prompt(std::span<const std::string> review_texts,
                            Aspect aspect, Sentiment sentiment,
                            std::span<const SummaryFewShotExample> examples);

// Follow-up prompt sent once when a classification answer did not parse.
PromptText with_reask(const PromptText& original);

std::string carp_prompt_version(std::span<const FewShotExample> examples);
std::string dsp_prompt_version(std::span<const SummaryFewShotExample> examples);

// ---------------------------------------------------------------------------
// Reading prompts back. Used by the offline mock backend, which answers from
// the prompt text alone.

enum class PromptTask { kClassify, kSummarize, kUnknown };

PromptTask detect_task(std::string_view prompt);

// The review text of the final INPUT section of a classification prompt.
std::optional<std::string> extract_classify_input(std::string_view prompt);

struct SummarizeRequest {
  Aspect aspect;
  Sentiment sentiment;
  std::vector<std::string> reviews;
};
std::optional<SummarizeRequest> extract_summarize_request(std::string_view prompt);

// ---------------------------------------------------------------------------
// Example stores

// Array of {input, pairs, clues?, reasoning?, origin?}. Throws SchemaError.
std::vector<FewShotExample> classification_examples_from_json(const Json& j);
// Array of {reviews, aspect, sentiment, bullets}. Throws SchemaError.
std::vector<SummaryFewShotExample> summarization_examples_from_json(const Json& j);

// The stores compiled into the library (20 and 10 examples).
std::vector<FewShotExample> default_classification_examples();
std::vector<SummaryFewShotExample> default_summarization_examples();

// Both example stores plus the derived prompt versions.
class PromptEngine {
 public:
  PromptEngine();  // default stores
  PromptEngine(std::vector<FewShotExample> classification,
               std::vector<SummaryFewShotExample> summarization);

  PromptText classify_prompt(std::string_view review_text) const;
  PromptText summarize_prompt(std::span<const std::string> review_texts,
                              AspectSentimentPair pair) const;

  // Combined version of both templates and stores.
  const std::string& version() const { return version_; }

  const std::vector<FewShotExample>& classification_examples() const {
    return classification_;
  }
  const std::vector<SummaryFewShotExample>& summarization_examples() const {
    return summarization_;
  }

 private:
  std::vector<FewShotExample> classification_;
  std::vector<SummaryFewShotExample> summarization_;
  std::string version_;
};

}  // namespace quickcue
