#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "podseg/text_model.hpp"

namespace podseg {

// Window width for Pk / WindowDiff in sentence units. Either explicit, or
// half the mean reference segment length.
class WindowConfig {
 public:
  static WindowConfig explicit_width(std::size_t k);
  static WindowConfig half_mean_segment();

  bool derived() const { return !k_.has_value(); }
  // Resolves the width against a reference segmentation; always >= 1.
  std::size_t resolve(const Segmentation& reference) const;

 private:
  std::optional<std::size_t> k_;
};

double pk(const Segmentation& reference, const Segmentation& hypothesis, const WindowConfig& window);
double window_diff(const Segmentation& reference, const Segmentation& hypothesis, const WindowConfig& window);

// Each of the N - 1 internal gaps becomes a boundary with probability
// boundary_prob. Deterministic for a given seed on every platform.
Segmentation random_baseline(std::size_t n, double boundary_prob, std::uint64_t rng_seed);

// Reference boundary count over unit count: the inverse mean segment length.
double boundary_rate(const Segmentation& reference);
// Alternative reading: one over the mean number of segments per episode.
double inverse_mean_segment_count(std::span<const Segmentation> references);

struct EvalReport {
  std::string episode_id;
  std::string segmenter;
  std::string parameters;
  double pk = 0.0;
  double wd = 0.0;
  std::size_t window = 0;
  std::string embedding_identity;
};

EvalReport evaluate(const std::string& episode_id, const Segmentation& reference, const Segmentation& hypothesis,
                    const WindowConfig& window);

struct BaselineSummary {
  double pk = 0.0;
  double wd = 0.0;
  std::size_t iterations = 0;
};

// Mean Pk / WD of `iterations` baseline draws seeded seed, seed + 1, ...
BaselineSummary baseline_scores(const Segmentation& reference, double boundary_prob, std::size_t iterations,
                                std::uint64_t seed, const WindowConfig& window);

}  // namespace podseg
