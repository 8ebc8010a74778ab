#include <iomanip>
#include <iostream>

#include "common.hpp"
#include "podseg/error.hpp"
#include "podseg/tuning.hpp"

namespace podseg::cli {

namespace fs = std::filesystem;

namespace {

Json params_json(const ParamList& params) {
  Json j = Json::object();
  for (const auto& [name, value] : params) j[name] = value;
  return j;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void add_result(Report& report, const TuneResult& result) {
  for (const auto& config : result.configs) {
    for (const auto& r : config.reports) {
      Json rec;
      rec["record"] = "eval";
      rec["segmenter"] = r.segmenter;
      rec["params"] = r.parameters;
      rec["episode_id"] = r.episode_id;
      rec["pk"] = r.pk;
      rec["wd"] = r.wd;
      rec["window"] = r.window;
      if (!r.embedding_identity.empty()) rec["embeddings"] = r.embedding_identity;
      report.add(std::move(rec));
    }
    Json rec;
    rec["record"] = "config";
    rec["segmenter"] = result.segmenter;
    rec["params"] = params_json(config.params);
    rec["mean_pk"] = number_or_null(config.mean_pk);
    rec["mean_wd"] = number_or_null(config.mean_wd);
    rec["objective"] = number_or_null(config.objective);
    rec["evaluated"] = config.evaluated;
    rec["failed"] = config.failures.size();
    if (!config.failures.empty()) rec["failures"] = config.failures;
    report.add(std::move(rec));
  }
  const auto& best = result.best();
  report.add(Json{{"record", "best"},
                  {"segmenter", result.segmenter},
                  {"objective_kind", std::string(to_string(result.objective))},
                  {"params", params_json(best.params)},
                  {"mean_pk", best.mean_pk},
                  {"mean_wd", best.mean_wd},
                  {"objective", best.objective}});
}

}  // namespace

int cmd_tune(const TuneOptionsCli& o, Context& ctx) {
  if (o.segmenter != "tiling" && o.segmenter != "textsplit" && o.segmenter != "both") {
    throw ConfigError("--segmenter expects tiling, textsplit or both");
  }
  const bool run_tiling = o.segmenter != "textsplit";
  const bool run_split = o.segmenter != "tiling";
  if (run_split && o.embeddings.empty()) throw ConfigError("textsplit tuning needs --embeddings");

  GridSpec grid;
  if (!o.w_values.empty()) grid.w_values = o.w_values;
  if (!o.k_values.empty()) grid.k_values = o.k_values;
  if (!o.f_values.empty()) grid.f_values = o.f_values;
  if (!o.l_values.empty()) grid.l_values = o.l_values;
  TuneOptions options;
  try {
    grid.validate();
    options.objective = parse_objective(o.objective);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  options.window = parse_window(o.window);
  options.jobs = o.jobs;
  if (o.variant == "greedy") {
    options.variant = SplitVariant::Greedy;
  } else if (o.variant != "dynamic") {
    throw ConfigError("--variant expects greedy or dynamic");
  }

  RunManifest manifest = make_manifest("tune");
  manifest.config["segmenter"] = o.segmenter;
  manifest.config["objective"] = o.objective;
  manifest.config["window"] = o.window;
  if (run_tiling) {
    manifest.config["w"] = grid.w_values;
    manifest.config["k"] = grid.k_values;
    manifest.config["f"] = grid.f_values;
  }
  if (run_split) {
    manifest.config["l"] = grid.l_values;
    manifest.config["variant"] = o.variant;
    manifest.config["embeddings"] = o.embeddings;
  }

  const auto corpus = load_corpus_dir(o.corpus);
  if (corpus.empty()) throw Error(ErrorCode::EmptyInput, "no annotated transcripts in " + o.corpus);
  for (const auto& episode : corpus) {
    fs::path transcript = fs::path(o.corpus) / episode.metadata.at("source");
    manifest.add_input(transcript);
    manifest.add_input(fs::path(transcript).replace_extension(".seg"));
  }

  std::vector<TuneResult> results;
  if (run_tiling) results.push_back(tune_tiling(corpus, grid, options));
  if (run_split) {
    manifest.add_input(o.embeddings);
    const EmbeddingStore store = load_vectors_file(o.embeddings);
    results.push_back(tune_textsplit(corpus, grid.l_values, store, options));
  }

  Report report(std::move(manifest));
  std::size_t failures = 0;
  for (const auto& result : results) {
    add_result(report, result);
    for (const auto& c : result.configs) failures += c.failures.size();
  }
  const Selection selection = select_best(results);
  report.add(Json{{"record", "selection"},
                  {"segmenter", selection.segmenter},
                  {"params", params_json(selection.config.params)},
                  {"objective", selection.config.objective}});

  emit(ctx, report, o.report, [&](std::ostream& out) {
    out << std::left << std::setw(12) << "segmenter" << std::setw(20) << "params" << std::setw(10) << "mean Pk"
        << std::setw(10) << "mean WD" << std::setw(10) << "objective" << "failed\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& result : results) {
      for (const auto& c : result.configs) {
        out << std::setw(12) << result.segmenter << std::setw(20) << format_params(c.params) << std::setw(10)
            << c.mean_pk << std::setw(10) << c.mean_wd << std::setw(10) << c.objective << c.failures.size() << "\n";
      }
    }
    out << "best: " << selection.segmenter << " " << format_params(selection.config.params) << " (objective "
        << selection.config.objective << ")\n";
    out.unsetf(std::ios::floatfield);
  });
  if (failures > 0) {
    ctx.err << "podseg tune: " << failures << " episode evaluations failed and were excluded\n";
    return kWarnings;
  }
  return kOk;
}

}  // namespace podseg::cli
