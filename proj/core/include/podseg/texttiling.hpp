#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "podseg/text_model.hpp"

namespace podseg {

using StopwordSet = std::unordered_set<std::string>;

// The shipped English list (versioned data file compiled into the library).
const StopwordSet& default_stopwords();
std::string_view default_stopwords_version();

enum class CutoffPolicy : int {
  HalfStdev = 0,  // mean - stdev / 2
  FullStdev = 1,  // mean - stdev
};

struct TilingParams {
  std::size_t w = 30;  // pseudosentence length in tokens
  std::size_t k = 5;   // block size in pseudosentences
  CutoffPolicy f = CutoffPolicy::HalfStdev;
  std::size_t smoothing_width = 3;
  std::size_t smoothing_rounds = 1;
  StopwordSet stopwords = default_stopwords();

  void validate() const;
};

struct GapScores {
  std::vector<double> values;
  // Offset, in the stopword-filtered token stream, of the first token after
  // each gap.
  std::vector<std::size_t> gap_token_offsets;
};

using TokenSequence = std::vector<std::string>;

// Stopword-filtered tokens chunked into runs of w; a short tail is merged
// into the previous run. Throws EmptyInput when no tokens survive.
std::vector<TokenSequence> pseudosentences(const Transcript& transcript, std::size_t w,
                                           const StopwordSet& stopwords);

// Cosine similarity of term-frequency vectors over up to k pseudosentences
// either side of each gap. Throws TooShort for fewer than two pseudosentences.
GapScores block_similarities(std::span<const TokenSequence> pseudos, std::size_t k);

GapScores smooth(const GapScores& scores, std::size_t width, std::size_t rounds);

std::vector<double> depth_scores(std::span<const double> scores);

double depth_cutoff(std::span<const double> depths, CutoffPolicy policy);

// Gaps at valley bottoms of `scores` whose depth is strictly above cutoff.
std::vector<std::size_t> select_gaps(std::span<const double> scores, std::span<const double> depths,
                                     double cutoff);

// Maps a token offset to the nearest sentence end (1-based boundary index in
// [1, N-1]); ties go to the earlier sentence. Returns 0 for single-sentence
// transcripts.
std::size_t snap_to_sentence(const Transcript& transcript, const StopwordSet& stopwords,
                             std::size_t token_offset);

Segmentation tile(const Transcript& transcript, const TilingParams& params = {});

}  // namespace podseg
