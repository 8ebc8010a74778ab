#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "expect_error.hpp"
#include "fixtures.hpp"
#include "podseg/corpus.hpp"
#include "podseg/texttiling.hpp"
#include "podseg/metrics.hpp"

using namespace podseg;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << s;
}

Segmentation annotations(const std::string& text) {
  std::istringstream in(text);
  return parse_annotations(in);
}

SurveyTable survey(const std::string& text) {
  std::istringstream in(text);
  return parse_survey(in);
}

std::string parse_error_message(const std::string& json) {
  try {
    spotify_transcript_text(json, "sample.json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  FAIL("expected ParseError");
  return {};
}

}  // namespace

TEST_CASE("plain transcripts") {
  fixture::TempDir dir("corpus");
  write(dir / "ep1.txt", "A b. C d.");
  const Transcript t = load_transcript(dir / "ep1.txt");
  CHECK(t.size() == 2);
  CHECK(t.episode_id() == "ep1");
  CHECK(code_of([&] { load_transcript(dir / "missing.txt"); }) == ErrorCode::IoError);
}

TEST_CASE("structured transcripts join chunk text") {
  const auto path = fixture::data_dir() / "spotify_sample.json";
  CHECK(format_for_path(path) == TranscriptFormat::SpotifyJson);
  const Transcript t = load_transcript(path);
  CHECK(t.raw_text() == "Welcome back to the show. Today we talk about gardening.");
  CHECK(t.size() == 2);

  CHECK(spotify_transcript_text(R"({"results":[{"alternatives":[{"transcript":"one."}]},
                                               {"alternatives":[{"transcript":"two."}]}]})") == "one. two.");
  CHECK(parse_error_message(R"({"items": []})").find("'results'") != std::string::npos);
  CHECK(parse_error_message(R"({"results": [{"foo": 1}]})").find("'alternatives'") != std::string::npos);
  CHECK(parse_error_message(R"({"results": [{"alternatives": [{"words": []}]}]})").find("'transcript'") !=
        std::string::npos);
  CHECK(code_of([] { spotify_transcript_text("{not json"); }) == ErrorCode::ParseError);
}

TEST_CASE("transcript format names") {
  CHECK(parse_transcript_format("plain") == TranscriptFormat::Plain);
  CHECK(parse_transcript_format("spotify-json") == TranscriptFormat::SpotifyJson);
  CHECK(code_of([] { parse_transcript_format("xml"); }) == ErrorCode::UnsupportedFormat);
  CHECK(format_for_path("a/b.txt") == TranscriptFormat::Plain);
}

TEST_CASE("annotation files") {
  CHECK(annotations("N=10\n4\n10\n").masses() == std::vector<std::size_t>{4, 6});
  CHECK(annotations("N=10\n4\n").masses() == std::vector<std::size_t>{4, 6});
  CHECK(annotations("N=3\n").masses() == std::vector<std::size_t>{3});
  CHECK(code_of([] { annotations("N=10\n11\n"); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { annotations("N=10\n0\n"); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { annotations("N=10\n5\n3\n"); }) == ErrorCode::NonMonotonic);
  CHECK(code_of([] { annotations("4\n10\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { annotations("N=10\nfour\n"); }) == ErrorCode::ParseError);
  const Segmentation s(9, {2, 5, 9});
  CHECK(annotations(format_annotations(s)) == s);
}

TEST_CASE("survey tables") {
  const auto t = survey(
      "segment_id,title_source,participant_id,score\n"
      "s1,human,p1,4\ns1,human,p2,5\ns1,t5,p1,3\ns1,t5,p2,2\n");
  CHECK(t.rows().size() == 4);
  CHECK(t.sources() == std::vector<std::string>{"human", "t5"});

  const auto tabbed = survey("score\tparticipant_id\tsegment_id\ttitle_source\n5\tp1\ts9\tbart\n");
  REQUIRE(tabbed.rows().size() == 1);
  CHECK(tabbed.rows()[0] == SurveyRow{"s9", "bart", "p1", 5});

  CHECK(code_of([] { survey("segment_id,title_source,participant_id,score\ns1,t5,p1,6\n"); }) ==
        ErrorCode::BadScore);
  CHECK(code_of([] { survey("segment_id,title_source,participant_id,score\ns1,t5,p1,4.5\n"); }) ==
        ErrorCode::BadScore);
  CHECK(code_of([] { survey("segment_id,title_source,participant_id,score\ns1,t5,p1,4\ns1,t5,p1,2\n"); }) ==
        ErrorCode::DuplicateRow);
  CHECK(code_of([] { survey("segment_id,title_source,score\ns1,t5,4\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("corpus directories pair transcripts with annotations") {
  fixture::TempDir dir("corpus-dir");
  write(dir / "b.txt", "One two. Three four. Five six.");
  write(dir / "b.seg", "N=3\n1\n3\n");
  write(dir / "a.txt", "Alpha. Beta.");
  write(dir / "a.seg", "N=2\n2\n");
  const auto corpus = load_corpus_dir(dir.path());
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].transcript.episode_id() == "a");
  CHECK(corpus[1].reference.boundaries() == std::vector<std::size_t>{1, 3});

  write(dir / "c.txt", "Lonely.");
  CHECK(code_of([&] { load_corpus_dir(dir.path()); }) == ErrorCode::ParseError);
  fs::remove(dir / "c.txt");
  write(dir / "d.txt", "Too. Few. Here.");
  write(dir / "d.seg", "N=2\n2\n");
  CHECK(code_of([&] { load_corpus_dir(dir.path()); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("synthetic corpora") {
  SynthConfig cfg;
  cfg.seed = 3;
  cfg.episodes = 5;
  const auto a = synth_corpus(cfg);
  const auto b = synth_corpus(cfg);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].transcript == b[i].transcript);
    CHECK(a[i].reference == b[i].reference);
    const std::size_t topics = a[i].reference.segment_count();
    CHECK(topics >= 3);
    CHECK(topics <= 6);
    for (auto m : a[i].reference.masses()) {
      CHECK(m >= 8);
      CHECK(m <= 16);
    }
  }

  SynthConfig two;
  two.topics_min = two.topics_max = 2;
  two.overlap = 0.0;
  two.episodes = 3;
  for (const auto& ep : synth_corpus(two)) {
    CHECK(ep.reference.internal_boundaries().size() == 1);
    for (const auto& s : ep.transcript.sentences()) {
      for (const auto& tok : s.tokens) CHECK(tok.rfind("tp", 0) == 0);
    }
  }

  SynthConfig bad;
  bad.overlap = 1.0;
  CHECK(code_of([&] { synth_corpus(bad); }) == ErrorCode::InvalidArgument);
  bad.overlap = 0.2;
  bad.topics_min = 7;
  CHECK(code_of([&] { synth_corpus(bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("heavier vocabulary overlap makes segmentation harder") {
  auto mean_pk = [](double overlap) {
    SynthConfig cfg;
    cfg.seed = 12;
    cfg.episodes = 20;
    cfg.overlap = overlap;
    double sum = 0;
    for (const auto& ep : synth_corpus(cfg)) {
      TilingParams p;
      p.w = 20;
      p.k = 5;
      sum += pk(ep.reference, tile(ep.transcript, p), WindowConfig::half_mean_segment());
    }
    return sum / 20;
  };
  CHECK(mean_pk(0.9) > mean_pk(0.0));
}

TEST_CASE("synthetic vectors cover the synthetic vocabulary") {
  SynthConfig cfg;
  const auto store = synth_embeddings(cfg, 16, 7);
  CHECK(store.dimension() == 16);
  CHECK(store.size() == cfg.topic_pool * cfg.vocab_per_topic + cfg.shared_vocab);
  CHECK(store.find(synth_topic_word(19, 24)) != nullptr);
  CHECK(store.find(synth_shared_word(49)) != nullptr);

  std::ostringstream out;
  write_vectors(out, store, {synth_shared_word(0), synth_topic_word(0, 0)});
  std::istringstream in(out.str());
  const auto back = load_vectors(in);
  CHECK(back.size() == 2);
  CHECK(std::abs((*back.find(synth_shared_word(0)))[0] - (*store.find(synth_shared_word(0)))[0]) <= 5e-7);

  // The checked-in 50-d fixture is exactly what the generator writes.
  const auto fixture_store = load_vectors_file((fixture::data_dir() / "synth_vectors_50d.txt").string());
  const auto fresh = synth_embeddings(cfg, 50, 7);
  CHECK(fixture_store.size() == fresh.size());
  const auto& v = *fixture_store.find(synth_topic_word(3, 4));
  const auto& w = *fresh.find(synth_topic_word(3, 4));
  for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(v[i] - w[i]) <= 5e-7);
}
