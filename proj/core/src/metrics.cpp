#include "podseg/metrics.hpp"

#include <cmath>
#include <random>

#include "podseg/error.hpp"

namespace podseg {

WindowConfig WindowConfig::explicit_width(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "window width must be >= 1");
  WindowConfig w;
  w.k_ = k;
  return w;
}

WindowConfig WindowConfig::half_mean_segment() { return WindowConfig{}; }

std::size_t WindowConfig::resolve(const Segmentation& reference) const {
  if (k_) return *k_;
  const double half_mean =
      static_cast<double>(reference.total()) / (2.0 * static_cast<double>(reference.segment_count()));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(half_mean)));
}

namespace {

// Segment id of every unit; unit u (0-based) lies in segment ids[u].
std::vector<std::size_t> segment_ids(const Segmentation& seg) {
  std::vector<std::size_t> ids(seg.total());
  std::size_t begin = 0;
  for (std::size_t j = 0; j < seg.segment_count(); ++j) {
    const std::size_t end = seg.boundaries()[j];
    for (std::size_t u = begin; u < end; ++u) ids[u] = j;
    begin = end;
  }
  return ids;
}

template <typename WindowError>
double windowed(const Segmentation& reference, const Segmentation& hypothesis, const WindowConfig& window,
                WindowError&& error) {
  if (reference.total() != hypothesis.total()) {
    throw Error(ErrorCode::LengthMismatch, "reference has " + std::to_string(reference.total()) +
                                               " units, hypothesis " + std::to_string(hypothesis.total()));
  }
  const std::size_t n = reference.total();
  const std::size_t k = window.resolve(reference);
  if (k >= n) {
    throw Error(ErrorCode::WindowTooLarge, "window " + std::to_string(k) + " needs more than " +
                                               std::to_string(n) + " units");
  }
  const auto ref = segment_ids(reference);
  const auto hyp = segment_ids(hypothesis);
  std::size_t errors = 0;
  for (std::size_t i = 0; i + k < n; ++i) {
    // Boundaries strictly inside the window equal the change in segment id.
    if (error(ref[i + k] - ref[i], hyp[i + k] - hyp[i])) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(n - k);
}

}  // namespace

double pk(const Segmentation& reference, const Segmentation& hypothesis, const WindowConfig& window) {
  return windowed(reference, hypothesis, window,
                  [](std::size_t r, std::size_t h) { return (r > 0) != (h > 0); });
}

double window_diff(const Segmentation& reference, const Segmentation& hypothesis, const WindowConfig& window) {
  return windowed(reference, hypothesis, window, [](std::size_t r, std::size_t h) { return r != h; });
}

Segmentation random_baseline(std::size_t n, double boundary_prob, std::uint64_t rng_seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "baseline needs at least one unit");
  if (!(boundary_prob > 0.0 && boundary_prob <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "boundary probability must lie in (0, 1]");
  }
  std::mt19937_64 rng(rng_seed);
  std::vector<std::size_t> boundaries;
  for (std::size_t gap = 1; gap < n; ++gap) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < boundary_prob) boundaries.push_back(gap);
  }
  boundaries.push_back(n);
  return Segmentation(n, std::move(boundaries));
}

double boundary_rate(const Segmentation& reference) {
  return static_cast<double>(reference.segment_count()) / static_cast<double>(reference.total());
}

double inverse_mean_segment_count(std::span<const Segmentation> references) {
  if (references.empty()) throw Error(ErrorCode::EmptyInput, "no reference segmentations");
  double segments = 0.0;
  for (const auto& r : references) segments += static_cast<double>(r.segment_count());
  return static_cast<double>(references.size()) / segments;
}

EvalReport evaluate(const std::string& episode_id, const Segmentation& reference, const Segmentation& hypothesis,
                    const WindowConfig& window) {
  EvalReport report;
  report.episode_id = episode_id;
  report.window = window.resolve(reference);
  report.pk = pk(reference, hypothesis, window);
  report.wd = window_diff(reference, hypothesis, window);
  return report;
}

BaselineSummary baseline_scores(const Segmentation& reference, double boundary_prob, std::size_t iterations,
                                std::uint64_t seed, const WindowConfig& window) {
  if (iterations < 1) throw Error(ErrorCode::InvalidArgument, "baseline needs at least one iteration");
  BaselineSummary out;
  out.iterations = iterations;
  for (std::size_t i = 0; i < iterations; ++i) {
    const Segmentation draw = random_baseline(reference.total(), boundary_prob, seed + i);
    out.pk += pk(reference, draw, window);
    out.wd += window_diff(reference, draw, window);
  }
  out.pk /= static_cast<double>(iterations);
  out.wd /= static_cast<double>(iterations);
  return out;
}

}  // namespace podseg
