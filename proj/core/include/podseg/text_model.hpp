#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace podseg {

// Half-open byte range [begin, end) into a transcript's raw text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const CharSpan&) const = default;
};

struct Sentence {
  std::size_t index = 0;
  std::vector<std::string> tokens;  // lowercase, [a-z0-9'] only
  CharSpan span;

  bool operator==(const Sentence&) const = default;
};

// An episode's text resolved into indexed, tokenised sentences. Immutable
// once built; the constructor rejects broken index or span ordering.
class Transcript {
 public:
  Transcript() = default;
  Transcript(std::string episode_id, std::string raw_text, std::vector<Sentence> sentences);

  const std::string& episode_id() const { return episode_id_; }
  const std::string& raw_text() const { return raw_text_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  std::size_t size() const { return sentences_.size(); }
  bool empty() const { return sentences_.empty(); }
  std::size_t token_count() const;

  std::string_view sentence_text(std::size_t index) const;
  // Raw text from the first sentence's start to the last sentence's end of
  // the half-open sentence range [first, last).
  std::string_view text_between(std::size_t first, std::size_t last) const;

  bool operator==(const Transcript&) const = default;

 private:
  std::string episode_id_;
  std::string raw_text_;
  std::vector<Sentence> sentences_;
};

// A partition of `total` sentences into contiguous segments. Boundaries are
// 1-based indices of the last sentence of each segment; the final boundary
// always equals total.
class Segmentation {
 public:
  Segmentation(std::size_t total, std::vector<std::size_t> boundaries);

  static Segmentation single(std::size_t total);
  static Segmentation from_masses(std::span<const std::size_t> masses);

  std::size_t total() const { return total_; }
  const std::vector<std::size_t>& boundaries() const { return boundaries_; }
  std::size_t segment_count() const { return boundaries_.size(); }
  std::vector<std::size_t> masses() const;
  // Boundaries excluding the forced final one.
  std::vector<std::size_t> internal_boundaries() const;
  // Zero-based half-open sentence range of segment j.
  std::pair<std::size_t, std::size_t> segment_range(std::size_t j) const;

  bool operator==(const Segmentation&) const = default;

 private:
  std::size_t total_ = 0;
  std::vector<std::size_t> boundaries_;
};

// Splits at '.', '!' or '?' followed by whitespace and at blank lines. The
// text is NFC-normalised first; every character outside [A-Za-z0-9'] is a
// token separator. Sentences without tokens are dropped.
Transcript tokenize(std::string_view raw_text, std::string episode_id = {});

std::vector<std::size_t> masses_of(const Segmentation& seg);
Segmentation boundaries_of(std::span<const std::size_t> masses, std::size_t total);

}  // namespace podseg
