#include "podseg/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "podseg/error.hpp"
#include "podseg/parallel.hpp"

namespace podseg {

void GridSpec::validate() const {
  auto positive = [](const std::vector<std::size_t>& values, const char* name) {
    if (values.empty()) throw Error(ErrorCode::InvalidArgument, std::string(name) + " grid is empty");
    for (auto v : values) {
      if (v < 1) throw Error(ErrorCode::InvalidArgument, std::string(name) + " values must be positive");
    }
  };
  positive(w_values, "w");
  positive(k_values, "k");
  positive(l_values, "l");
  if (f_values.empty()) throw Error(ErrorCode::InvalidArgument, "f grid is empty");
  for (int f : f_values) {
    if (f != 0 && f != 1) throw Error(ErrorCode::InvalidArgument, "f values must be 0 or 1");
  }
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::MeanPkWd: return "mean";
    case Objective::Pk: return "pk";
    case Objective::Wd: return "wd";
  }
  return "mean";
}

Objective parse_objective(std::string_view name) {
  if (name == "mean") return Objective::MeanPkWd;
  if (name == "pk") return Objective::Pk;
  if (name == "wd") return Objective::Wd;
  throw Error(ErrorCode::InvalidArgument, "unknown objective '" + std::string(name) + "'");
}

double episode_objective(const EvalReport& report, Objective objective) {
  switch (objective) {
    case Objective::Pk: return report.pk;
    case Objective::Wd: return report.wd;
    case Objective::MeanPkWd: break;
  }
  return (report.pk + report.wd) / 2.0;
}

std::string format_params(const ParamList& params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ",";
    out += name + "=" + std::to_string(value);
  }
  return out;
}

namespace {

using Segmenter = std::function<Segmentation(const Transcript&)>;

ConfigResult evaluate_config(std::span<const AnnotatedEpisode> corpus, ParamList params, const std::string& name,
                             const Segmenter& segmenter, const TuneOptions& options,
                             const std::string& embedding_identity) {
  ConfigResult result;
  result.params = std::move(params);
  const std::string label = format_params(result.params);
  double sum_objective = 0.0;
  for (const auto& episode : corpus) {
    const std::string& id = episode.transcript.episode_id();
    try {
      const Segmentation hypothesis = segmenter(episode.transcript);
      EvalReport report = evaluate(id, episode.reference, hypothesis, options.window);
      report.segmenter = name;
      report.parameters = label;
      report.embedding_identity = embedding_identity;
      result.mean_pk += report.pk;
      result.mean_wd += report.wd;
      sum_objective += episode_objective(report, options.objective);
      result.reports.push_back(std::move(report));
    } catch (const Error& e) {
      result.failures.push_back(id + ": " + e.what());
    }
  }
  result.evaluated = result.reports.size();
  if (result.evaluated == 0) {
    result.mean_pk = result.mean_wd = std::numeric_limits<double>::quiet_NaN();
    result.objective = std::numeric_limits<double>::infinity();
  } else {
    const double n = static_cast<double>(result.evaluated);
    result.mean_pk /= n;
    result.mean_wd /= n;
    result.objective = sum_objective / n;
  }
  return result;
}

std::size_t argmin(const std::vector<ConfigResult>& configs) {
  // Configs are sorted by parameters, so the first minimum wins ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < configs.size(); ++i) {
    if (configs[i].objective < configs[best].objective) best = i;
  }
  if (!std::isfinite(configs[best].objective)) {
    throw Error(ErrorCode::DegenerateInput, "every configuration failed on every episode");
  }
  return best;
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

TuneResult tune_tiling(std::span<const AnnotatedEpisode> corpus, const GridSpec& grid, const TuneOptions& options) {
  grid.validate();
  if (corpus.empty()) throw Error(ErrorCode::EmptyInput, "tuning corpus is empty");

  std::vector<ParamList> configs;
  for (auto w : sorted_unique(grid.w_values)) {
    for (auto k : sorted_unique(grid.k_values)) {
      for (int f : sorted_unique(grid.f_values)) {
        configs.push_back({{"w", w}, {"k", k}, {"f", static_cast<std::size_t>(f)}});
      }
    }
  }

  TuneResult out;
  out.segmenter = "texttiling";
  out.objective = options.objective;
  out.configs.resize(configs.size());
  parallel_for(configs.size(), options.jobs, [&](std::size_t i) {
    TilingParams params = options.tiling_base;
    params.w = configs[i][0].second;
    params.k = configs[i][1].second;
    params.f = static_cast<CutoffPolicy>(configs[i][2].second);
    out.configs[i] = evaluate_config(
        corpus, configs[i], out.segmenter, [&](const Transcript& t) { return tile(t, params); }, options, "");
  });
  out.best_index = argmin(out.configs);
  return out;
}

TuneResult tune_textsplit(std::span<const AnnotatedEpisode> corpus, std::span<const std::size_t> l_values,
                          const EmbeddingStore& store, const TuneOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyInput, "tuning corpus is empty");
  if (l_values.empty()) throw Error(ErrorCode::InvalidArgument, "l grid is empty");
  const auto ls = sorted_unique(std::vector<std::size_t>(l_values.begin(), l_values.end()));
  if (ls.front() < 1) throw Error(ErrorCode::InvalidArgument, "l values must be positive");

  TuneResult out;
  out.segmenter = "textsplit";
  out.objective = options.objective;
  out.configs.resize(ls.size());
  parallel_for(ls.size(), options.jobs, [&](std::size_t i) {
    SplitParams params;
    params.target_length = ls[i];
    params.variant = options.variant;
    out.configs[i] = evaluate_config(
        corpus, {{"l", ls[i]}}, out.segmenter, [&](const Transcript& t) { return split(t, store, params); },
        options, store.identity());
  });
  out.best_index = argmin(out.configs);
  return out;
}

Selection select_best(std::span<const TuneResult> results) {
  if (results.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to select from");
  const TuneResult* best = &results[0];
  for (const auto& r : results.subspan(1)) {
    const double a = r.best().objective;
    const double b = best->best().objective;
    if (a < b || (a == b && r.segmenter < best->segmenter)) best = &r;
  }
  return {best->segmenter, best->best()};
}

}  // namespace podseg
