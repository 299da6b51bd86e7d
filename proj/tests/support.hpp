#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <string>

#include "quickcue/gateway.hpp"
#include "quickcue/json_io.hpp"

namespace qc_test {

inline std::string fixture_path(const std::string& name) {
  return std::string(QUICKCUE_TEST_DIR) + "/fixtures/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(QUICKCUE_TEST_DIR) + "/golden/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline quickcue::Date ymd(int y, unsigned m, unsigned d) {
  return quickcue::Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline quickcue::PairSet random_pair_set(std::mt19937_64& rng) {
  return quickcue::PairSet::from_mask(std::uniform_int_distribution<unsigned long>(0, 1023)(rng));
}

// LlmClient answering through a callback; counts calls.
class FnClient : public quickcue::LlmClient {
 public:
  using Fn = std::function<std::string(const quickcue::PromptText&)>;
  explicit FnClient(Fn fn, int parallel = 1) : fn_(std::move(fn)), parallel_(parallel) {}
  std::string complete(const quickcue::PromptText& prompt) override {
    ++calls;
    return fn_(prompt);
  }
  int max_parallel() const override { return parallel_; }
  std::atomic<int> calls{0};

 private:
  Fn fn_;
  int parallel_;
};

// The offline mock with the demo lexicon, without a cache.
inline quickcue::MockBackend demo_backend(std::size_t max_bullets = 5) {
  return quickcue::MockBackend(quickcue::MockLexicon::demo(), max_bullets);
}

// Strips the generated_at line of a serialized digest.
inline std::string without_timestamp(const std::string& doc) {
  std::string out;
  std::istringstream in(doc);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("\"generated_at\"") != std::string::npos) continue;
    out += line + "\n";
  }
  return out;
}

}  // namespace qc_test
