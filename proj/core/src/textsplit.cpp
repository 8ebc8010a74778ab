#include "podseg/textsplit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "podseg/error.hpp"

namespace podseg {

std::string_view to_string(SplitVariant variant) {
  return variant == SplitVariant::Greedy ? "greedy" : "dynamic";
}

void SplitParams::validate() const {
  if (!penalty && !target_length) {
    throw Error(ErrorCode::InvalidArgument, "either a penalty or a target length is required");
  }
  if (penalty && (!std::isfinite(*penalty) || *penalty < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "penalty must be a finite non-negative number");
  }
  if (target_length && *target_length < 1) {
    throw Error(ErrorCode::InvalidArgument, "target length must be >= 1");
  }
}

double segment_score(std::span<const Vector> vectors, std::size_t a, std::size_t b) {
  if (a >= b || b > vectors.size()) throw Error(ErrorCode::OutOfRange, "segment range out of bounds");
  Vector sum(vectors[a].size(), 0.0);
  for (std::size_t i = a; i < b; ++i) {
    if (vectors[i].size() != sum.size()) throw Error(ErrorCode::LengthMismatch, "ragged sentence vectors");
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += vectors[i][j];
  }
  double sq = 0.0;
  for (double v : sum) sq += v * v;
  return std::sqrt(sq);
}

SegmentScorer::SegmentScorer(std::span<const Vector> vectors) : n_(vectors.size()) {
  if (n_ == 0) throw Error(ErrorCode::EmptyInput, "no sentence vectors");
  dim_ = vectors.front().size();
  prefix_.assign((n_ + 1) * dim_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (vectors[i].size() != dim_) throw Error(ErrorCode::LengthMismatch, "ragged sentence vectors");
    double sq = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      prefix_[(i + 1) * dim_ + j] = prefix_[i * dim_ + j] + vectors[i][j];
      sq += vectors[i][j] * vectors[i][j];
    }
    norm_sum_ += std::sqrt(sq);
  }
}

double SegmentScorer::score(std::size_t a, std::size_t b) const {
  const double* lo = prefix_.data() + a * dim_;
  const double* hi = prefix_.data() + b * dim_;
  double sq = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    const double d = hi[j] - lo[j];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double SegmentScorer::gain(std::size_t a, std::size_t t, std::size_t b, double p) const {
  return (score(a, t) + score(t, b)) - score(a, b) - p;
}

double split_objective(const SegmentScorer& scorer, const Segmentation& seg, double p) {
  if (seg.total() != scorer.size()) throw Error(ErrorCode::LengthMismatch, "segmentation does not match vectors");
  // Accumulated in the same order as the dynamic programme so equal
  // segmentations produce equal bits.
  double acc = 0.0;
  std::size_t begin = 0;
  for (std::size_t b : seg.boundaries()) {
    acc = acc + scorer.score(begin, b) - p;
    begin = b;
  }
  return acc + p;
}

namespace {

struct Candidate {
  double gain = -std::numeric_limits<double>::infinity();
  std::size_t t = 0;  // 0 means no split point
};

Candidate best_split(const SegmentScorer& scorer, std::size_t a, std::size_t b, double p) {
  Candidate best;
  for (std::size_t t = a + 1; t < b; ++t) {
    const double g = scorer.gain(a, t, b, p);
    if (g > best.gain) best = {g, t};
  }
  return best;
}

void check_penalty(double p) {
  if (!(p >= 0.0)) throw Error(ErrorCode::InvalidArgument, "penalty must be non-negative");
}

}  // namespace

Segmentation greedy_split(const SegmentScorer& scorer, double p) {
  check_penalty(p);
  const std::size_t n = scorer.size();
  struct Span {
    std::size_t a, b;
    Candidate best;
  };
  std::vector<Span> spans{{0, n, best_split(scorer, 0, n, p)}};
  for (;;) {
    std::size_t pick = spans.size();
    for (std::size_t i = 0; i < spans.size(); ++i) {
      const Candidate& c = spans[i].best;
      if (c.t == 0) continue;
      if (pick == spans.size() || c.gain > spans[pick].best.gain ||
          (c.gain == spans[pick].best.gain && c.t < spans[pick].best.t)) {
        pick = i;
      }
    }
    if (pick == spans.size() || !(spans[pick].best.gain > 0.0)) break;
    const auto [a, b, best] = spans[pick];
    spans[pick] = {a, best.t, best_split(scorer, a, best.t, p)};
    spans.insert(spans.begin() + static_cast<std::ptrdiff_t>(pick) + 1, Span{best.t, b, best_split(scorer, best.t, b, p)});
  }
  std::vector<std::size_t> boundaries;
  boundaries.reserve(spans.size());
  for (const auto& s : spans) boundaries.push_back(s.b);
  return Segmentation(n, std::move(boundaries));
}

Segmentation greedy_split(std::span<const Vector> vectors, double p) {
  return greedy_split(SegmentScorer(vectors), p);
}

Segmentation dynamic_split(const SegmentScorer& scorer, double p) {
  check_penalty(p);
  const std::size_t n = scorer.size();
  // value[b]: best objective accumulator over prefixes of length b, before the
  // final "+ p" correction. parent[b]: start of the last segment.
  std::vector<double> value(n + 1, 0.0);
  std::vector<std::size_t> count(n + 1, 0);
  std::vector<std::size_t> parent(n + 1, 0);

  auto path = [&](std::size_t b) {
    std::vector<std::size_t> out;
    while (b > 0) {
      out.push_back(b);
      b = parent[b];
    }
    std::reverse(out.begin(), out.end());
    return out;
  };

  for (std::size_t b = 1; b <= n; ++b) {
    bool have = false;
    for (std::size_t a = 0; a < b; ++a) {
      const double v = value[a] + scorer.score(a, b) - p;
      const std::size_t c = count[a] + 1;
      bool better = !have || v > value[b] || (v == value[b] && c < count[b]);
      if (have && !better && v == value[b] && c == count[b]) {
        // Same objective and size: keep the lexicographically earlier path.
        better = path(a) < path(parent[b]);
      }
      if (better) {
        value[b] = v;
        count[b] = c;
        parent[b] = a;
        have = true;
      }
    }
  }
  return Segmentation(n, path(n));
}

Segmentation dynamic_split(std::span<const Vector> vectors, double p) {
  return dynamic_split(SegmentScorer(vectors), p);
}

double penalty_from_length(const SegmentScorer& scorer, std::size_t l) {
  const std::size_t n = scorer.size();
  if (l < 1 || l > n) {
    throw Error(ErrorCode::InvalidArgument, "target length must lie in [1, " + std::to_string(n) + "]");
  }
  if (scorer.norm_sum() == 0.0) throw Error(ErrorCode::DegenerateInput, "all sentence vectors are zero");

  double lo = 0.0;
  double hi = scorer.norm_sum();
  for (int iter = 0; iter < 40; ++iter) {
    const double mid = (lo + hi) / 2.0;
    const auto segments = greedy_split(scorer, mid).segment_count();
    const double mean = static_cast<double>(n) / static_cast<double>(segments);
    if (mean >= static_cast<double>(l)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double penalty_from_length(std::span<const Vector> vectors, std::size_t l) {
  return penalty_from_length(SegmentScorer(vectors), l);
}

SplitOutcome split_detailed(const Transcript& transcript, const EmbeddingStore& store, const SplitParams& params) {
  params.validate();
  if (transcript.empty()) throw Error(ErrorCode::EmptyInput, "transcript has no sentences");
  TokenWeights weights;
  if (params.idf_weighting) weights = idf_weights(transcript);
  const auto vectors = sentence_vectors(transcript, store, params.idf_weighting ? &weights : nullptr);
  const SegmentScorer scorer(vectors);

  double p = 0.0;
  if (params.penalty) {
    p = *params.penalty;
  } else {
    p = penalty_from_length(scorer, std::min(*params.target_length, transcript.size()));
  }
  Segmentation seg = params.variant == SplitVariant::Greedy ? greedy_split(scorer, p) : dynamic_split(scorer, p);
  return {std::move(seg), p};
}

Segmentation split(const Transcript& transcript, const EmbeddingStore& store, const SplitParams& params) {
  return split_detailed(transcript, store, params).segmentation;
}

}  // namespace podseg
