#include <iostream>
#include <sstream>

#include "common.hpp"
#include "podseg/error.hpp"

namespace podseg::cli {

namespace fs = std::filesystem;

int cmd_synth(const SynthOptions& o, Context& ctx) {
  if (o.output_dir.empty()) throw ConfigError("--output is required");
  SynthConfig cfg;
  cfg.seed = o.seed;
  cfg.episodes = o.episodes;
  cfg.topics_min = o.topics_min;
  cfg.topics_max = o.topics_max;
  cfg.sentences_min = o.sentences_min;
  cfg.sentences_max = o.sentences_max;
  cfg.vocab_per_topic = o.vocab;
  cfg.overlap = o.overlap;
  try {
    cfg.validate();
    if (!o.vectors.empty() && o.dim == 0) throw Error(ErrorCode::InvalidArgument, "--dim must be positive");
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  RunManifest manifest = make_manifest("synth");
  manifest.config["seed"] = o.seed;
  manifest.config["episodes"] = o.episodes;
  manifest.config["topics"] = {o.topics_min, o.topics_max};
  manifest.config["sentences"] = {o.sentences_min, o.sentences_max};
  manifest.config["vocab"] = o.vocab;
  manifest.config["overlap"] = o.overlap;
  if (!o.vectors.empty()) {
    manifest.config["dim"] = o.dim;
    manifest.config["vector_seed"] = o.vector_seed;
  }

  Report report(std::move(manifest));
  for (const auto& episode : synth_corpus(cfg)) {
    const std::string& id = episode.transcript.episode_id();
    write_text(fs::path(o.output_dir) / (id + ".txt"), episode.transcript.raw_text() + "\n");
    write_text(fs::path(o.output_dir) / (id + ".seg"), format_annotations(episode.reference));
    report.add(Json{{"record", "episode"},
                    {"episode_id", id},
                    {"sentences", episode.reference.total()},
                    {"segments", episode.reference.segment_count()},
                    {"topics", episode.metadata.at("topics")}});
  }
  if (!o.vectors.empty()) {
    const EmbeddingStore store = synth_embeddings(cfg, o.dim, o.vector_seed);
    std::vector<std::string> order;
    for (std::size_t t = 0; t < cfg.topic_pool; ++t) {
      for (std::size_t i = 0; i < cfg.vocab_per_topic; ++i) order.push_back(synth_topic_word(t, i));
    }
    for (std::size_t i = 0; i < cfg.shared_vocab; ++i) order.push_back(synth_shared_word(i));
    std::ostringstream text;
    write_vectors(text, store, order);
    write_text(o.vectors, text.str());
    report.add(Json{{"record", "vectors"}, {"path", o.vectors}, {"words", order.size()}, {"dim", o.dim}});
  }

  emit(ctx, report, o.report, [&](std::ostream& out) {
    out << "wrote " << o.episodes << " episodes to " << o.output_dir << "\n";
    if (!o.vectors.empty()) out << "wrote vectors to " << o.vectors << "\n";
  });
  return kOk;
}

}  // namespace podseg::cli
