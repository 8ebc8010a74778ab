#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "common.hpp"
#include "podseg/error.hpp"
#include "podseg/version.hpp"

namespace podseg::cli {

namespace {

void add_tiling_flags(CLI::App* cmd, TilingFlags& t) {
  cmd->add_option("--w", t.w, "pseudosentence size in tokens")->capture_default_str();
  cmd->add_option("--k", t.k, "block size in pseudosentences")->capture_default_str();
  cmd->add_option("--f", t.f, "depth cutoff: 0 = mean - sd/2, 1 = mean - sd")->capture_default_str();
  cmd->add_option("--smoothing-width", t.smoothing_width)->capture_default_str();
  cmd->add_option("--smoothing-rounds", t.smoothing_rounds)->capture_default_str();
}

void add_split_flags(CLI::App* cmd, SplitFlags& s) {
  cmd->add_option("--penalty", s.penalty, "split penalty; overrides --target-length");
  cmd->add_option("--target-length", s.target_length, "desired mean segment length in sentences")
      ->capture_default_str();
  cmd->add_option("--variant", s.variant, "greedy or dynamic")->capture_default_str();
  cmd->add_flag("--idf", s.idf, "idf-weighted sentence vectors");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topic segmentation, evaluation and segment titling for transcripts", "podseg"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "table";
  app.add_option("--format", format, "table or jsonl")->check(CLI::IsMember({"table", "jsonl"}));

  SegmentOptions seg;
  auto* segment = app.add_subcommand("segment", "segment transcripts");
  segment->add_option("inputs", seg.inputs, "transcript files (.txt or .json)")->required();
  segment->add_option("--input-format", seg.input_format, "auto, plain or spotify-json")->capture_default_str();
  segment->add_option("--segmenter", seg.segmenter, "tiling or textsplit")->capture_default_str();
  add_tiling_flags(segment, seg.tiling);
  add_split_flags(segment, seg.split);
  segment->add_option("--embeddings", seg.embeddings, "word vector file");
  segment->add_option("-o,--output", seg.output_dir, "directory for .seg files")->required();
  segment->add_option("--report", seg.report, "report path");
  segment->add_option("--jobs", seg.jobs)->capture_default_str()->check(CLI::PositiveNumber);

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "score hypotheses against references");
  evaluate->add_option("--hypotheses", ev.hypotheses, "directory of hypothesis .seg files")->required();
  evaluate->add_option("--references", ev.references, "directory of reference .seg files")->required();
  evaluate->add_option("--window", ev.window, "auto or a window width")->capture_default_str();
  evaluate->add_flag("--baseline", ev.baseline, "add the random baseline comparison");
  evaluate->add_option("--baseline-rate", ev.baseline_rate, "episode or corpus")->capture_default_str();
  evaluate->add_option("--iterations", ev.iterations)->capture_default_str();
  evaluate->add_option("--seed", ev.seed)->capture_default_str();
  evaluate->add_option("--report", ev.report, "report path");

  TuneOptionsCli tu;
  auto* tune = app.add_subcommand("tune", "grid-search segmenter parameters on an annotated corpus");
  tune->add_option("corpus", tu.corpus, "directory of transcripts with .seg annotations")->required();
  tune->add_option("--segmenter", tu.segmenter, "tiling, textsplit or both")->capture_default_str();
  tune->add_option("--w", tu.w_values, "repeatable");
  tune->add_option("--k", tu.k_values, "repeatable");
  tune->add_option("--f", tu.f_values, "repeatable");
  tune->add_option("--l", tu.l_values, "repeatable target lengths");
  tune->add_option("--embeddings", tu.embeddings, "word vector file");
  tune->add_option("--objective", tu.objective, "mean, pk or wd")->capture_default_str();
  tune->add_option("--window", tu.window, "auto or a window width")->capture_default_str();
  tune->add_option("--variant", tu.variant, "greedy or dynamic")->capture_default_str();
  tune->add_option("--jobs", tu.jobs)->capture_default_str()->check(CLI::PositiveNumber);
  tune->add_option("--report", tu.report, "report path");

  BaselineOptions ba;
  auto* baseline = app.add_subcommand("baseline", "write seeded random segmentations");
  baseline->add_option("--references", ba.references, "directory of reference .seg files")->required();
  baseline->add_option("-o,--output", ba.output_dir, "directory for .seg files")->required();
  baseline->add_option("--rate", ba.rate, "episode or corpus")->capture_default_str();
  baseline->add_option("--probability", ba.probability, "fixed boundary probability");
  baseline->add_option("--seed", ba.seed)->capture_default_str();

  TitleOptions ti;
  auto* title = app.add_subcommand("title", "title each segment through a summarisation service");
  title->add_option("transcript", ti.transcript)->required();
  title->add_option("annotation", ti.annotation, ".seg file for the transcript")->required();
  title->add_option("--input-format", ti.input_format)->capture_default_str();
  title->add_option("--endpoint", ti.endpoint, "service URL");
  title->add_option("--timeout", ti.timeout_s, "seconds per request")->capture_default_str();
  title->add_option("--retries", ti.retries)->capture_default_str();
  title->add_option("--max-title-words", ti.max_title_words)->capture_default_str();
  title->add_option("--max-request-chars", ti.max_request_chars)->capture_default_str();
  title->add_option("--backoff-ms", ti.backoff_ms, "first retry delay")->capture_default_str();
  title->add_option("--jobs", ti.jobs, "concurrent requests")->capture_default_str()->check(CLI::PositiveNumber);
  title->add_option("--report", ti.report, "report path");

  SurveyOptions su;
  auto* survey = app.add_subcommand("survey", "relevancy scores and correlations");
  survey->add_option("survey", su.survey, "survey table")->required();
  survey->add_option("--variables", su.variables, "per-segment covariates keyed by segment_id");
  survey->add_option("--report", su.report, "report path");

  SynthOptions sy;
  auto* synth = app.add_subcommand("synth", "generate a synthetic annotated corpus");
  synth->add_option("-o,--output", sy.output_dir)->required();
  synth->add_option("--seed", sy.seed)->capture_default_str();
  synth->add_option("--episodes", sy.episodes)->capture_default_str();
  synth->add_option("--topics-min", sy.topics_min)->capture_default_str();
  synth->add_option("--topics-max", sy.topics_max)->capture_default_str();
  synth->add_option("--sentences-min", sy.sentences_min)->capture_default_str();
  synth->add_option("--sentences-max", sy.sentences_max)->capture_default_str();
  synth->add_option("--vocab", sy.vocab)->capture_default_str();
  synth->add_option("--overlap", sy.overlap)->capture_default_str();
  synth->add_option("--vectors", sy.vectors, "also write matching word vectors here");
  synth->add_option("--dim", sy.dim)->capture_default_str();
  synth->add_option("--vector-seed", sy.vector_seed)->capture_default_str();
  synth->add_option("--report", sy.report, "report path");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("podseg");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  Context ctx{out, err, format == "jsonl" ? OutputFormat::Jsonl : OutputFormat::Table};
  try {
    if (segment->parsed()) return cmd_segment(seg, ctx);
    if (evaluate->parsed()) return cmd_evaluate(ev, ctx);
    if (tune->parsed()) return cmd_tune(tu, ctx);
    if (baseline->parsed()) return cmd_baseline(ba, ctx);
    if (title->parsed()) return cmd_title(ti, ctx);
    if (survey->parsed()) return cmd_survey(su, ctx);
    if (synth->parsed()) return cmd_synth(sy, ctx);
  } catch (const ConfigError& e) {
    err << "podseg: configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "podseg: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument ? kConfigError : kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "podseg: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "podseg: " << e.what() << "\n";
    return kInputError;
  }
  return kConfigError;
}

}  // namespace podseg::cli
