#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "podseg/corpus.hpp"
#include "podseg/embeddings.hpp"
#include "podseg/metrics.hpp"
#include "podseg/textsplit.hpp"
#include "podseg/texttiling.hpp"

namespace podseg {

struct GridSpec {
  std::vector<std::size_t> w_values{10, 20, 30, 40};
  std::vector<std::size_t> k_values{5, 10, 15};
  std::vector<int> f_values{0, 1};
  std::vector<std::size_t> l_values{5, 10, 15, 20, 30};

  void validate() const;
};

enum class Objective {
  MeanPkWd,  // mean over episodes of (Pk + WD) / 2
  Pk,
  Wd,
};

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view name);

// Per-episode selection objective.
double episode_objective(const EvalReport& report, Objective objective);

using ParamList = std::vector<std::pair<std::string, std::size_t>>;

std::string format_params(const ParamList& params);

struct ConfigResult {
  ParamList params;  // ("w", 30), ("k", 5), ("f", 0) or ("l", 10)
  double mean_pk = 0.0;
  double mean_wd = 0.0;
  double objective = 0.0;  // +inf when every episode failed
  std::size_t evaluated = 0;
  std::vector<std::string> failures;  // "episode: message"
  std::vector<EvalReport> reports;
};

struct TuneResult {
  std::string segmenter;
  Objective objective = Objective::MeanPkWd;
  std::vector<ConfigResult> configs;  // sorted by params
  std::size_t best_index = 0;

  const ConfigResult& best() const { return configs.at(best_index); }
};

struct TuneOptions {
  WindowConfig window = WindowConfig::half_mean_segment();
  Objective objective = Objective::MeanPkWd;
  std::size_t jobs = 1;
  TilingParams tiling_base;  // smoothing and stopwords for tiling runs
  SplitVariant variant = SplitVariant::Dynamic;
};

// Grid search over (w, k, f). Ties go to smaller w, then k, then f.
TuneResult tune_tiling(std::span<const AnnotatedEpisode> corpus, const GridSpec& grid, const TuneOptions& options = {});

// Linear search over target segment length l. Ties go to smaller l.
TuneResult tune_textsplit(std::span<const AnnotatedEpisode> corpus, std::span<const std::size_t> l_values,
                          const EmbeddingStore& store, const TuneOptions& options = {});

struct Selection {
  std::string segmenter;
  ConfigResult config;
};

// Lowest best objective across segmenters; ties go to the smaller name.
Selection select_best(std::span<const TuneResult> results);

}  // namespace podseg
