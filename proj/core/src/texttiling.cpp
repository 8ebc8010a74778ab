#include "podseg/texttiling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "podseg/error.hpp"

namespace podseg {

namespace detail {
extern const char* const kStopwordsText;
extern const char* const kStopwordsVersion;
}  // namespace detail

const StopwordSet& default_stopwords() {
  static const StopwordSet words = [] {
    StopwordSet out;
    std::istringstream in(detail::kStopwordsText);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.front() == '#') continue;
      out.insert(line);
    }
    return out;
  }();
  return words;
}

std::string_view default_stopwords_version() { return detail::kStopwordsVersion; }

void TilingParams::validate() const {
  if (w < 1) throw Error(ErrorCode::InvalidArgument, "pseudosentence length w must be >= 1");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "block size k must be >= 1");
  if (f != CutoffPolicy::HalfStdev && f != CutoffPolicy::FullStdev) {
    throw Error(ErrorCode::InvalidArgument, "cutoff policy f must be 0 or 1");
  }
  if (smoothing_width < 1 || smoothing_width % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "smoothing width must be a positive odd integer");
  }
}

std::vector<TokenSequence> pseudosentences(const Transcript& transcript, std::size_t w,
                                           const StopwordSet& stopwords) {
  if (w < 1) throw Error(ErrorCode::InvalidArgument, "pseudosentence length w must be >= 1");
  TokenSequence stream;
  for (const Sentence& s : transcript.sentences()) {
    for (const auto& token : s.tokens) {
      if (!stopwords.contains(token)) stream.push_back(token);
    }
  }
  if (stream.empty()) {
    throw Error(ErrorCode::EmptyInput, "no tokens left after stopword removal");
  }

  const std::size_t full = std::max<std::size_t>(1, stream.size() / w);
  std::vector<TokenSequence> out(full);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    out[std::min(i / w, full - 1)].push_back(std::move(stream[i]));
  }
  return out;
}

namespace {

using TermCounts = std::unordered_map<std::string_view, double>;

void add_counts(TermCounts& counts, const TokenSequence& seq) {
  for (const auto& token : seq) counts[token] += 1.0;
}

double cosine(const TermCounts& left, const TermCounts& right) {
  double dot = 0.0;
  for (const auto& [term, count] : left) {
    if (auto it = right.find(term); it != right.end()) dot += count * it->second;
  }
  auto norm2 = [](const TermCounts& counts) {
    double acc = 0.0;
    for (const auto& [term, count] : counts) acc += count * count;
    return acc;
  };
  const double denom = std::sqrt(norm2(left) * norm2(right));
  if (denom == 0.0) return 0.0;
  return std::clamp(dot / denom, 0.0, 1.0);
}

}  // namespace

GapScores block_similarities(std::span<const TokenSequence> pseudos, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "block size k must be >= 1");
  if (pseudos.size() < 2) {
    throw Error(ErrorCode::TooShort, "block comparison needs at least two pseudosentences");
  }
  GapScores out;
  const std::size_t gaps = pseudos.size() - 1;
  out.values.reserve(gaps);
  out.gap_token_offsets.reserve(gaps);

  std::size_t offset = 0;
  for (std::size_t g = 0; g < gaps; ++g) {
    offset += pseudos[g].size();
    const std::size_t left_begin = g + 1 >= k ? g + 1 - k : 0;
    const std::size_t right_end = std::min(pseudos.size(), g + 1 + k);
    TermCounts left, right;
    for (std::size_t i = left_begin; i <= g; ++i) add_counts(left, pseudos[i]);
    for (std::size_t i = g + 1; i < right_end; ++i) add_counts(right, pseudos[i]);
    out.values.push_back(cosine(left, right));
    out.gap_token_offsets.push_back(offset);
  }
  return out;
}

GapScores smooth(const GapScores& scores, std::size_t width, std::size_t rounds) {
  if (width < 1 || width % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "smoothing width must be a positive odd integer");
  }
  GapScores out = scores;
  const std::size_t half = width / 2;
  const std::size_t n = out.values.size();
  std::vector<double> next(n);
  for (std::size_t round = 0; round < rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i >= half ? i - half : 0;
      const std::size_t hi = std::min(n, i + half + 1);
      double acc = 0.0;
      for (std::size_t j = lo; j < hi; ++j) acc += out.values[j];
      next[i] = acc / static_cast<double>(hi - lo);
    }
    out.values.swap(next);
  }
  return out;
}

std::vector<double> depth_scores(std::span<const double> scores) {
  std::vector<double> depths(scores.size(), 0.0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    double left_peak = scores[i];
    for (std::size_t j = i; j-- > 0;) {
      if (scores[j] < left_peak) break;
      left_peak = scores[j];
    }
    double right_peak = scores[i];
    for (std::size_t j = i + 1; j < scores.size(); ++j) {
      if (scores[j] < right_peak) break;
      right_peak = scores[j];
    }
    depths[i] = (left_peak - scores[i]) + (right_peak - scores[i]);
  }
  return depths;
}

double depth_cutoff(std::span<const double> depths, CutoffPolicy policy) {
  if (depths.empty()) return 0.0;
  const double n = static_cast<double>(depths.size());
  const double mean = std::accumulate(depths.begin(), depths.end(), 0.0) / n;
  double var = 0.0;
  for (double d : depths) var += (d - mean) * (d - mean);
  const double stdev = std::sqrt(var / n);
  return policy == CutoffPolicy::HalfStdev ? mean - stdev / 2.0 : mean - stdev;
}

std::vector<std::size_t> select_gaps(std::span<const double> scores, std::span<const double> depths,
                                     double cutoff) {
  if (scores.size() != depths.size()) {
    throw Error(ErrorCode::LengthMismatch, "scores and depths differ in length");
  }
  std::vector<std::size_t> out;
  std::size_t i = 0;
  const std::size_t n = scores.size();
  while (i < n) {
    // Treat a plateau as one candidate located at its first gap.
    std::size_t run_end = i + 1;
    while (run_end < n && scores[run_end] == scores[i]) ++run_end;
    const bool left_higher = i == 0 || scores[i - 1] > scores[i];
    const bool right_higher = run_end == n || scores[run_end] > scores[i];
    if (left_higher && right_higher && depths[i] > cutoff) out.push_back(i);
    i = run_end;
  }
  return out;
}

std::size_t snap_to_sentence(const Transcript& transcript, const StopwordSet& stopwords,
                             std::size_t token_offset) {
  const auto& sentences = transcript.sentences();
  std::size_t best = 0;
  std::size_t best_distance = 0;
  std::size_t end_offset = 0;
  for (std::size_t j = 0; j + 1 < sentences.size(); ++j) {
    for (const auto& token : sentences[j].tokens) {
      if (!stopwords.contains(token)) ++end_offset;
    }
    const std::size_t distance =
        end_offset > token_offset ? end_offset - token_offset : token_offset - end_offset;
    if (best == 0 || distance < best_distance) {
      best = j + 1;
      best_distance = distance;
    }
  }
  return best;
}

Segmentation tile(const Transcript& transcript, const TilingParams& params) {
  params.validate();
  if (transcript.empty()) throw Error(ErrorCode::EmptyInput, "transcript has no sentences");

  const auto pseudos = pseudosentences(transcript, params.w, params.stopwords);
  const std::size_t n = transcript.size();
  if (pseudos.size() < 2) return Segmentation::single(n);

  const GapScores raw = block_similarities(pseudos, params.k);
  const GapScores smoothed = smooth(raw, params.smoothing_width, params.smoothing_rounds);
  const auto depths = depth_scores(smoothed.values);
  const double cutoff = depth_cutoff(depths, params.f);

  std::vector<std::size_t> boundaries;
  for (std::size_t gap : select_gaps(smoothed.values, depths, cutoff)) {
    const std::size_t b = snap_to_sentence(transcript, params.stopwords, smoothed.gap_token_offsets[gap]);
    if (b > 0) boundaries.push_back(b);
  }
  boundaries.push_back(n);
  std::sort(boundaries.begin(), boundaries.end());
  boundaries.erase(std::unique(boundaries.begin(), boundaries.end()), boundaries.end());
  return Segmentation(n, std::move(boundaries));
}

}  // namespace podseg
