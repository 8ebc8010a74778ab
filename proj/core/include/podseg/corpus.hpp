#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "podseg/embeddings.hpp"
#include "podseg/survey.hpp"
#include "podseg/text_model.hpp"

namespace podseg {

// A transcript with its reference segmentation; the reference always covers
// exactly the transcript's sentences.
struct AnnotatedEpisode {
  AnnotatedEpisode(Transcript transcript, Segmentation reference, std::map<std::string, std::string> metadata = {});

  Transcript transcript;
  Segmentation reference;
  std::map<std::string, std::string> metadata;
};

enum class TranscriptFormat { Plain, SpotifyJson };

std::string_view to_string(TranscriptFormat format);
// "plain" / "spotify-json"; throws UnsupportedFormat otherwise.
TranscriptFormat parse_transcript_format(std::string_view name);
// .json files are structured ASR output, everything else plain text.
TranscriptFormat format_for_path(const std::filesystem::path& path);

// Joins results[].alternatives[].transcript chunks in order. The first
// alternative carrying a transcript is used; results without one are skipped.
std::string spotify_transcript_text(std::string_view json_text, std::string_view source_name = "<memory>");

Transcript load_transcript(const std::filesystem::path& path, TranscriptFormat format);
Transcript load_transcript(const std::filesystem::path& path);

// "N=<total>" header followed by 1-based boundary indices, one per line. A
// missing final boundary is appended.
Segmentation parse_annotations(std::istream& in, std::string_view source_name = "<memory>");
Segmentation load_annotations(const std::filesystem::path& path);
std::string format_annotations(const Segmentation& seg);

// Delimited (comma or tab) table with columns segment_id, title_source,
// participant_id, score.
SurveyTable parse_survey(std::istream& in, std::string_view source_name = "<memory>");
SurveyTable load_survey(const std::filesystem::path& path);

// Pairs every transcript (<stem>.txt / <stem>.json) with <stem>.seg, sorted by
// stem. Throws ParseError listing transcripts without annotations.
std::vector<AnnotatedEpisode> load_corpus_dir(const std::filesystem::path& dir);

struct SynthConfig {
  std::uint64_t seed = 1;
  std::size_t episodes = 20;
  std::size_t topics_min = 3, topics_max = 6;
  std::size_t sentences_min = 8, sentences_max = 16;  // per topic block
  std::size_t tokens_min = 8, tokens_max = 14;        // per sentence
  std::size_t vocab_per_topic = 25;
  std::size_t topic_pool = 20;   // distinct topics available to all episodes
  std::size_t shared_vocab = 50;
  double overlap = 0.2;          // probability a token comes from the shared pool

  void validate() const;
};

std::string synth_topic_word(std::size_t topic, std::size_t index);
std::string synth_shared_word(std::size_t index);

std::vector<AnnotatedEpisode> synth_corpus(const SynthConfig& config);

// Topic-clustered vectors covering every word synth_corpus can emit. Shared
// words get unit-scale random directions.
EmbeddingStore synth_embeddings(const SynthConfig& config, std::size_t dimension, std::uint64_t seed);

// GloVe-style text with fixed six-decimal components, in the given order.
void write_vectors(std::ostream& out, const EmbeddingStore& store, const std::vector<std::string>& order);

}  // namespace podseg
