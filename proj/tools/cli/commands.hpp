#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace podseg::cli {

enum class OutputFormat { Table, Jsonl };

struct Context {
  std::ostream& out;
  std::ostream& err;
  OutputFormat format = OutputFormat::Table;
};

struct TilingFlags {
  std::size_t w = 30;
  std::size_t k = 5;
  int f = 0;
  std::size_t smoothing_width = 3;
  std::size_t smoothing_rounds = 1;
};

struct SplitFlags {
  std::optional<double> penalty;
  std::size_t target_length = 10;
  std::string variant = "dynamic";
  bool idf = false;
};

struct SegmentOptions {
  std::vector<std::string> inputs;
  std::string input_format = "auto";
  std::string segmenter = "tiling";
  TilingFlags tiling;
  SplitFlags split;
  std::string embeddings;
  std::string output_dir;
  std::string report;  // defaults to <output_dir>/segment_report.jsonl
  std::size_t jobs = 1;
};

struct EvaluateOptions {
  std::string hypotheses;
  std::string references;
  std::string window = "auto";
  bool baseline = false;
  std::string baseline_rate = "episode";  // episode | corpus
  std::size_t iterations = 10;
  std::uint64_t seed = 0;
  std::string report;
};

struct TuneOptionsCli {
  std::string corpus;
  std::string segmenter = "tiling";  // tiling | textsplit | both
  std::vector<std::size_t> w_values, k_values, l_values;
  std::vector<int> f_values;
  std::string embeddings;
  std::string objective = "mean";
  std::string window = "auto";
  std::string variant = "dynamic";
  std::size_t jobs = 1;
  std::string report;
};

struct BaselineOptions {
  std::string references;
  std::string output_dir;
  std::string rate = "episode";  // episode | corpus
  std::optional<double> probability;
  std::uint64_t seed = 0;
};

struct TitleOptions {
  std::string transcript;
  std::string annotation;
  std::string input_format = "auto";
  std::string endpoint;
  double timeout_s = 30.0;
  std::size_t retries = 2;
  std::size_t max_title_words = 12;
  std::size_t max_request_chars = 30'000;
  std::size_t backoff_ms = 1'000;
  std::size_t jobs = 4;
  std::string report;
};

struct SurveyOptions {
  std::string survey;
  std::string variables;
  std::string report;
};

struct SynthOptions {
  std::string output_dir;
  std::uint64_t seed = 1;
  std::size_t episodes = 20;
  std::size_t topics_min = 3, topics_max = 6;
  std::size_t sentences_min = 8, sentences_max = 16;
  std::size_t vocab = 25;
  double overlap = 0.2;
  std::string vectors;
  std::size_t dim = 50;
  std::uint64_t vector_seed = 7;
  std::string report;
};

int cmd_segment(const SegmentOptions& o, Context& ctx);
int cmd_evaluate(const EvaluateOptions& o, Context& ctx);
int cmd_tune(const TuneOptionsCli& o, Context& ctx);
int cmd_baseline(const BaselineOptions& o, Context& ctx);
int cmd_title(const TitleOptions& o, Context& ctx);
int cmd_survey(const SurveyOptions& o, Context& ctx);
int cmd_synth(const SynthOptions& o, Context& ctx);

// Parses argv (argv[0] is the program name), dispatches and maps errors to
// exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace podseg::cli
