#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "podseg/text_model.hpp"

namespace fixture {

inline std::filesystem::path data_dir() { return PODSEG_TEST_DATA_DIR; }

// Throwaway directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("podseg-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// `per_topic` sentences over the vocabulary "alpha0".."alpha<tokens-1>", then
// `per_topic` over the disjoint "beta" vocabulary. Each sentence is a seeded
// permutation of its topic's words, so any run of whole sentences has a flat
// term-frequency profile and the join is the only dip in block similarity.
inline std::string two_topic_text(std::uint64_t seed, std::size_t per_topic = 40, std::size_t tokens = 10) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(tokens);
  std::string text;
  for (const char* prefix : {"alpha", "beta"}) {
    for (std::size_t s = 0; s < per_topic; ++s) {
      for (std::size_t t = 0; t < tokens; ++t) order[t] = t;
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t t = 0; t < tokens; ++t) {
        if (t > 0) text += ' ';
        text += prefix + std::to_string(order[t]);
      }
      text += ". ";
    }
  }
  text.pop_back();
  return text;
}

// Same layout, but every token is an independent draw from a `vocab`-word
// topic vocabulary, which leaves small lexical dips inside each topic.
inline std::string noisy_two_topic_text(std::uint64_t seed, std::size_t per_topic = 40, std::size_t tokens = 10,
                                        std::size_t vocab = 30) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
  std::string text;
  for (const char* prefix : {"alpha", "beta"}) {
    for (std::size_t s = 0; s < per_topic; ++s) {
      for (std::size_t t = 0; t < tokens; ++t) {
        if (t > 0) text += ' ';
        text += prefix + std::to_string(pick(rng));
      }
      text += ". ";
    }
  }
  text.pop_back();
  return text;
}

}  // namespace fixture
