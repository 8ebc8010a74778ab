#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "podseg/embeddings.hpp"
#include "podseg/text_model.hpp"

namespace podseg {

using Vector = std::vector<double>;

enum class SplitVariant { Greedy, Dynamic };

std::string_view to_string(SplitVariant variant);

struct SplitParams {
  std::optional<double> penalty;                 // split penalty p
  std::optional<std::size_t> target_length = 10;  // calibrates p when no penalty is given
  SplitVariant variant = SplitVariant::Dynamic;
  bool idf_weighting = false;

  void validate() const;
};

// Norm of the sum of vectors [a, b), summed left to right.
double segment_score(std::span<const Vector> vectors, std::size_t a, std::size_t b);

// Prefix-sum backed scorer used by the segmenters. Every query for the same
// (a, b) returns the same bits regardless of call order or thread.
class SegmentScorer {
 public:
  explicit SegmentScorer(std::span<const Vector> vectors);

  std::size_t size() const { return n_; }
  std::size_t dimension() const { return dim_; }
  double score(std::size_t a, std::size_t b) const;
  // Gain of splitting [a, b) at t under penalty p.
  double gain(std::size_t a, std::size_t t, std::size_t b, double p) const;
  // Sum of per-sentence norms; no split has positive gain at this penalty.
  double norm_sum() const { return norm_sum_; }

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> prefix_;  // (n + 1) x dim, row-major
  double norm_sum_ = 0.0;
};

// Sum of segment scores minus p per split.
double split_objective(const SegmentScorer& scorer, const Segmentation& seg, double p);

Segmentation greedy_split(std::span<const Vector> vectors, double p);
Segmentation greedy_split(const SegmentScorer& scorer, double p);

Segmentation dynamic_split(std::span<const Vector> vectors, double p);
Segmentation dynamic_split(const SegmentScorer& scorer, double p);

// Smallest penalty (by 40-step bisection) at which greedy_split's mean
// segment length reaches l.
double penalty_from_length(std::span<const Vector> vectors, std::size_t l);
double penalty_from_length(const SegmentScorer& scorer, std::size_t l);

struct SplitOutcome {
  Segmentation segmentation;
  double penalty = 0.0;
};

// Target lengths above the sentence count are clamped to it.
SplitOutcome split_detailed(const Transcript& transcript, const EmbeddingStore& store, const SplitParams& params = {});
Segmentation split(const Transcript& transcript, const EmbeddingStore& store, const SplitParams& params = {});

}  // namespace podseg
