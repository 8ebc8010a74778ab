#include <iomanip>
#include <iostream>
#include <set>

#include "common.hpp"
#include "podseg/embeddings.hpp"
#include "podseg/error.hpp"
#include "podseg/parallel.hpp"
#include "podseg/textsplit.hpp"
#include "podseg/texttiling.hpp"

namespace podseg::cli {

namespace fs = std::filesystem;

namespace {

SplitVariant parse_variant(const std::string& name) {
  if (name == "greedy") return SplitVariant::Greedy;
  if (name == "dynamic") return SplitVariant::Dynamic;
  throw ConfigError("--variant expects greedy or dynamic, got '" + name + "'");
}

}  // namespace

int cmd_segment(const SegmentOptions& o, Context& ctx) {
  if (o.segmenter != "tiling" && o.segmenter != "textsplit") {
    throw ConfigError("--segmenter expects tiling or textsplit, got '" + o.segmenter + "'");
  }
  const bool textsplit = o.segmenter == "textsplit";
  if (textsplit && o.embeddings.empty()) throw ConfigError("textsplit needs --embeddings");
  if (o.output_dir.empty()) throw ConfigError("--output is required");
  if (o.inputs.empty()) throw ConfigError("no input transcripts given");

  TilingParams tiling;
  tiling.w = o.tiling.w;
  tiling.k = o.tiling.k;
  tiling.f = static_cast<CutoffPolicy>(o.tiling.f);
  tiling.smoothing_width = o.tiling.smoothing_width;
  tiling.smoothing_rounds = o.tiling.smoothing_rounds;
  SplitParams split_params;
  split_params.penalty = o.split.penalty;
  split_params.target_length = o.split.target_length;
  split_params.variant = parse_variant(o.split.variant);
  split_params.idf_weighting = o.split.idf;
  try {
    if (textsplit) {
      split_params.validate();
    } else {
      tiling.validate();
    }
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  std::set<std::string> stems;
  for (const auto& input : o.inputs) {
    if (!stems.insert(fs::path(input).stem().string()).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate episode id '" + fs::path(input).stem().string() + "'");
    }
  }

  RunManifest manifest = make_manifest("segment");
  Json config;
  config["segmenter"] = o.segmenter;
  config["input_format"] = o.input_format;
  if (textsplit) {
    if (o.split.penalty) {
      config["penalty"] = *o.split.penalty;
    } else {
      config["target_length"] = o.split.target_length;
    }
    config["variant"] = o.split.variant;
    config["idf"] = o.split.idf;
    config["embeddings"] = o.embeddings;
  } else {
    config["w"] = tiling.w;
    config["k"] = tiling.k;
    config["f"] = o.tiling.f;
    config["smoothing_width"] = tiling.smoothing_width;
    config["smoothing_rounds"] = tiling.smoothing_rounds;
    config["stopwords"] = default_stopwords_version();
  }
  manifest.config = config;
  for (const auto& input : o.inputs) manifest.add_input(input);

  EmbeddingStore store;
  if (textsplit) {
    manifest.add_input(o.embeddings);
    store = load_vectors_file(o.embeddings);
  }

  struct Outcome {
    std::string id;
    std::optional<Segmentation> seg;
    double penalty = 0.0;
  };
  std::vector<Outcome> outcomes(o.inputs.size());
  parallel_for(o.inputs.size(), o.jobs, [&](std::size_t i) {
    const Transcript transcript = load_input(o.inputs[i], o.input_format);
    outcomes[i].id = transcript.episode_id();
    if (textsplit) {
      SplitOutcome result = split_detailed(transcript, store, split_params);
      outcomes[i].seg = std::move(result.segmentation);
      outcomes[i].penalty = result.penalty;
    } else {
      outcomes[i].seg = tile(transcript, tiling);
    }
  });

  Report report(std::move(manifest));
  for (const auto& outcome : outcomes) {
    const fs::path annotation = fs::path(o.output_dir) / (outcome.id + ".seg");
    write_text(annotation, format_annotations(*outcome.seg));
    Json record;
    record["record"] = "episode";
    record["episode_id"] = outcome.id;
    record["sentences"] = outcome.seg->total();
    record["segments"] = outcome.seg->segment_count();
    record["boundaries"] = outcome.seg->boundaries();
    if (textsplit) record["penalty"] = outcome.penalty;
    record["annotation"] = annotation.filename().string();
    report.add(std::move(record));
  }
  report.add(Json{{"record", "summary"}, {"episodes", outcomes.size()}});

  const std::string report_path =
      o.report.empty() ? (fs::path(o.output_dir) / "segment_report.jsonl").string() : o.report;
  emit(ctx, report, report_path, [&](std::ostream& out) {
    out << std::left << std::setw(28) << "episode" << std::setw(10) << "sentences" << "segments\n";
    for (const auto& outcome : outcomes) {
      out << std::left << std::setw(28) << outcome.id << std::setw(10) << outcome.seg->total()
          << outcome.seg->segment_count() << "\n";
    }
  });
  return kOk;
}

}  // namespace podseg::cli
