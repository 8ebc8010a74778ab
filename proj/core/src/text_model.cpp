#include "podseg/text_model.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <numeric>

#include "podseg/error.hpp"

namespace podseg {

Transcript::Transcript(std::string episode_id, std::string raw_text, std::vector<Sentence> sentences)
    : episode_id_(std::move(episode_id)), raw_text_(std::move(raw_text)), sentences_(std::move(sentences)) {
  std::size_t previous_end = 0;
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    const Sentence& s = sentences_[i];
    if (s.index != i) {
      throw Error(ErrorCode::InvalidArgument, "sentence indices must be contiguous from 0");
    }
    if (s.span.begin < previous_end || s.span.end < s.span.begin || s.span.end > raw_text_.size()) {
      throw Error(ErrorCode::InvalidArgument, "sentence spans must be ordered and non-overlapping");
    }
    for (const auto& token : s.tokens) {
      if (token.empty() || token.find_first_of(" \t\r\n\f\v") != std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "tokens must be non-empty and whitespace free");
      }
    }
    previous_end = s.span.end;
  }
}

std::size_t Transcript::token_count() const {
  return std::accumulate(sentences_.begin(), sentences_.end(), std::size_t{0},
                         [](std::size_t acc, const Sentence& s) { return acc + s.tokens.size(); });
}

std::string_view Transcript::sentence_text(std::size_t index) const {
  const CharSpan& span = sentences_.at(index).span;
  return std::string_view(raw_text_).substr(span.begin, span.size());
}

std::string_view Transcript::text_between(std::size_t first, std::size_t last) const {
  if (first >= last || last > sentences_.size()) {
    throw Error(ErrorCode::OutOfRange, "sentence range out of bounds");
  }
  const std::size_t begin = sentences_[first].span.begin;
  const std::size_t end = sentences_[last - 1].span.end;
  return std::string_view(raw_text_).substr(begin, end - begin);
}

Segmentation::Segmentation(std::size_t total, std::vector<std::size_t> boundaries)
    : total_(total), boundaries_(std::move(boundaries)) {
  if (total_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "segmentation needs at least one unit");
  }
  if (boundaries_.empty() || boundaries_.back() != total_) {
    throw Error(ErrorCode::InvalidArgument, "last boundary must equal the unit count");
  }
  std::size_t previous = 0;
  for (std::size_t b : boundaries_) {
    if (b <= previous) {
      throw Error(ErrorCode::NonMonotonic, "boundaries must be strictly increasing and positive");
    }
    previous = b;
  }
}

Segmentation Segmentation::single(std::size_t total) { return Segmentation(total, {total}); }

Segmentation Segmentation::from_masses(std::span<const std::size_t> masses) {
  std::vector<std::size_t> boundaries;
  boundaries.reserve(masses.size());
  std::size_t acc = 0;
  for (std::size_t m : masses) {
    if (m == 0) {
      throw Error(ErrorCode::InvalidArgument, "segment masses must be positive");
    }
    acc += m;
    boundaries.push_back(acc);
  }
  return Segmentation(acc, std::move(boundaries));
}

std::vector<std::size_t> Segmentation::masses() const {
  std::vector<std::size_t> out;
  out.reserve(boundaries_.size());
  std::size_t previous = 0;
  for (std::size_t b : boundaries_) {
    out.push_back(b - previous);
    previous = b;
  }
  return out;
}

std::vector<std::size_t> Segmentation::internal_boundaries() const {
  return {boundaries_.begin(), boundaries_.end() - 1};
}

std::pair<std::size_t, std::size_t> Segmentation::segment_range(std::size_t j) const {
  const std::size_t begin = j == 0 ? 0 : boundaries_.at(j - 1);
  return {begin, boundaries_.at(j)};
}

std::vector<std::size_t> masses_of(const Segmentation& seg) { return seg.masses(); }

Segmentation boundaries_of(std::span<const std::size_t> masses, std::size_t total) {
  Segmentation seg = Segmentation::from_masses(masses);
  if (seg.total() != total) {
    throw Error(ErrorCode::LengthMismatch, "masses sum to " + std::to_string(seg.total()) +
                                               ", expected " + std::to_string(total));
  }
  return seg;
}

namespace {

std::string nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::InvalidArgument, "NFC normaliser unavailable");
  }
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString normalised = normalizer->normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::InvalidArgument, "NFC normalisation failed");
  }
  std::string out;
  normalised.toUTF8String(out);
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

std::vector<std::string> tokens_in(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_token_char(text[i])) {
      ++i;
      continue;
    }
    std::string token;
    bool has_alnum = false;
    while (i < text.size() && is_token_char(text[i])) {
      char c = text[i++];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      has_alnum = has_alnum || c != '\'';
      token.push_back(c);
    }
    if (has_alnum) tokens.push_back(std::move(token));
  }
  return tokens;
}

// Returns the end of a blank-line run starting at `pos` (a '\n'), or npos.
std::size_t blank_line_end(std::string_view text, std::size_t pos) {
  std::size_t j = pos + 1;
  while (j < text.size() && text[j] != '\n' && is_space(text[j])) ++j;
  if (j < text.size() && text[j] == '\n') return j + 1;
  return std::string_view::npos;
}

}  // namespace

Transcript tokenize(std::string_view raw_text, std::string episode_id) {
  std::string text = nfc(raw_text);
  const std::string_view view(text);
  std::vector<Sentence> sentences;

  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && is_space(view[begin])) ++begin;
    while (end > begin && is_space(view[end - 1])) --end;
    if (begin == end) return;
    auto tokens = tokens_in(view.substr(begin, end - begin));
    if (tokens.empty()) return;
    sentences.push_back(Sentence{sentences.size(), std::move(tokens), CharSpan{begin, end}});
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < view.size()) {
    const char c = view[i];
    if (is_terminator(c) && i + 1 < view.size() && is_space(view[i + 1])) {
      emit(start, i + 1);
      start = i + 1;
      ++i;
      continue;
    }
    if (c == '\n') {
      if (std::size_t end = blank_line_end(view, i); end != std::string_view::npos) {
        emit(start, i);
        start = end;
        i = end;
        continue;
      }
    }
    ++i;
  }
  emit(start, view.size());
  return Transcript(std::move(episode_id), std::move(text), std::move(sentences));
}

}  // namespace podseg
