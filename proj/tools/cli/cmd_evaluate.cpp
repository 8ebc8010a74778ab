#include <iomanip>
#include <iostream>

#include "common.hpp"
#include "podseg/error.hpp"

namespace podseg::cli {

namespace fs = std::filesystem;

namespace {

struct Pairing {
  std::vector<std::string> ids;
  std::vector<fs::path> hypotheses;
  std::vector<fs::path> references;
};

Pairing pair_by_stem(const fs::path& hyp_dir, const fs::path& ref_dir) {
  const auto hyps = annotation_files(hyp_dir);
  const auto refs = annotation_files(ref_dir);
  Pairing out;
  std::string unmatched;
  for (const auto& [id, path] : hyps) {
    auto it = refs.find(id);
    if (it == refs.end()) {
      unmatched += " " + id + " (no reference)";
      continue;
    }
    out.ids.push_back(id);
    out.hypotheses.push_back(path);
    out.references.push_back(it->second);
  }
  for (const auto& [id, path] : refs) {
    if (!hyps.contains(id)) unmatched += " " + id + " (no hypothesis)";
  }
  if (!unmatched.empty()) throw Error(ErrorCode::ParseError, "unmatched episode ids:" + unmatched);
  if (out.ids.empty()) throw Error(ErrorCode::EmptyInput, "no annotation files to evaluate");
  return out;
}

double resolve_rate(const std::string& mode, const Segmentation& reference, double corpus_rate) {
  if (mode == "episode") return boundary_rate(reference);
  return corpus_rate;
}

}  // namespace

int cmd_evaluate(const EvaluateOptions& o, Context& ctx) {
  const WindowConfig window = parse_window(o.window);
  if (o.baseline_rate != "episode" && o.baseline_rate != "corpus") {
    throw ConfigError("--baseline-rate expects episode or corpus");
  }
  if (o.baseline && o.iterations < 1) throw ConfigError("--iterations must be >= 1");

  const Pairing pairs = pair_by_stem(o.hypotheses, o.references);

  RunManifest manifest = make_manifest("evaluate");
  manifest.config["window"] = o.window;
  manifest.config["baseline"] = o.baseline;
  if (o.baseline) {
    manifest.config["baseline_rate"] = o.baseline_rate;
    manifest.config["iterations"] = o.iterations;
    manifest.config["seed"] = o.seed;
  }
  std::vector<Segmentation> refs, hyps;
  for (std::size_t i = 0; i < pairs.ids.size(); ++i) {
    manifest.add_input(pairs.hypotheses[i]);
    manifest.add_input(pairs.references[i]);
    hyps.push_back(load_annotations(pairs.hypotheses[i]));
    refs.push_back(load_annotations(pairs.references[i]));
  }
  const double corpus_rate = inverse_mean_segment_count(refs);

  Report report(std::move(manifest));
  double sum_pk = 0.0, sum_wd = 0.0, base_pk = 0.0, base_wd = 0.0;
  for (std::size_t i = 0; i < pairs.ids.size(); ++i) {
    const EvalReport r = evaluate(pairs.ids[i], refs[i], hyps[i], window);
    sum_pk += r.pk;
    sum_wd += r.wd;
    Json record;
    record["record"] = "episode";
    record["episode_id"] = r.episode_id;
    record["pk"] = r.pk;
    record["wd"] = r.wd;
    record["window"] = r.window;
    if (o.baseline) {
      const double rate = std::min(1.0, resolve_rate(o.baseline_rate, refs[i], corpus_rate));
      const BaselineSummary b = baseline_scores(refs[i], rate, o.iterations, o.seed, window);
      base_pk += b.pk;
      base_wd += b.wd;
      record["baseline_probability"] = rate;
      record["baseline_pk"] = b.pk;
      record["baseline_wd"] = b.wd;
    }
    report.add(std::move(record));
  }
  const double n = static_cast<double>(pairs.ids.size());
  Json summary;
  summary["record"] = "summary";
  summary["episodes"] = pairs.ids.size();
  summary["mean_pk"] = sum_pk / n;
  summary["mean_wd"] = sum_wd / n;
  if (o.baseline) {
    summary["baseline"] = Json{{"iterations", o.iterations},
                               {"seed", o.seed},
                               {"mean_pk", base_pk / n},
                               {"mean_wd", base_wd / n}};
  }
  report.add(summary);

  emit(ctx, report, o.report, [&](std::ostream& out) {
    out << std::left << std::setw(28) << "episode" << std::setw(10) << "Pk" << std::setw(10) << "WD";
    if (o.baseline) out << std::setw(10) << "base Pk" << "base WD";
    out << "\n" << std::fixed << std::setprecision(4);
    for (const auto& rec : report.records()) {
      if (rec["record"] != "episode") continue;
      out << std::setw(28) << rec["episode_id"].get<std::string>() << std::setw(10) << rec["pk"].get<double>()
          << std::setw(10) << rec["wd"].get<double>();
      if (o.baseline) out << std::setw(10) << rec["baseline_pk"].get<double>() << rec["baseline_wd"].get<double>();
      out << "\n";
    }
    out << std::setw(28) << "mean" << std::setw(10) << sum_pk / n << std::setw(10) << sum_wd / n;
    if (o.baseline) out << std::setw(10) << base_pk / n << base_wd / n;
    out << "\n";
    out.unsetf(std::ios::floatfield);
  });
  return kOk;
}

int cmd_baseline(const BaselineOptions& o, Context& ctx) {
  if (o.output_dir.empty()) throw ConfigError("--output is required");
  if (o.rate != "episode" && o.rate != "corpus") throw ConfigError("--rate expects episode or corpus");
  if (o.probability && !(*o.probability > 0.0 && *o.probability <= 1.0)) {
    throw ConfigError("--probability must lie in (0, 1]");
  }
  const auto files = annotation_files(o.references);
  if (files.empty()) throw Error(ErrorCode::EmptyInput, "no reference annotations in " + o.references);

  RunManifest manifest = make_manifest("baseline");
  manifest.config["rate"] = o.probability ? "fixed" : o.rate;
  if (o.probability) manifest.config["probability"] = *o.probability;
  manifest.config["seed"] = o.seed;

  std::vector<std::string> ids;
  std::vector<Segmentation> refs;
  for (const auto& [id, path] : files) {
    manifest.add_input(path);
    ids.push_back(id);
    refs.push_back(load_annotations(path));
  }
  const double corpus_rate = inverse_mean_segment_count(refs);

  Report report(std::move(manifest));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double rate = o.probability ? *o.probability : std::min(1.0, resolve_rate(o.rate, refs[i], corpus_rate));
    const Segmentation draw = random_baseline(refs[i].total(), rate, o.seed + i);
    write_text(fs::path(o.output_dir) / (ids[i] + ".seg"), format_annotations(draw));
    report.add(Json{{"record", "episode"},
                    {"episode_id", ids[i]},
                    {"probability", rate},
                    {"seed", o.seed + i},
                    {"boundaries", draw.boundaries()}});
  }
  emit(ctx, report, (fs::path(o.output_dir) / "baseline_report.jsonl").string(), [&](std::ostream& out) {
    for (const auto& rec : report.records()) {
      out << rec["episode_id"].get<std::string>() << ": " << rec["boundaries"].size() << " segments\n";
    }
  });
  return kOk;
}

}  // namespace podseg::cli
