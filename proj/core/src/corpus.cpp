#include "podseg/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "podseg/error.hpp"

namespace podseg {

namespace fs = std::filesystem;

AnnotatedEpisode::AnnotatedEpisode(Transcript t, Segmentation r, std::map<std::string, std::string> m)
    : transcript(std::move(t)), reference(std::move(r)), metadata(std::move(m)) {
  if (reference.total() != transcript.size()) {
    throw Error(ErrorCode::LengthMismatch, "episode '" + transcript.episode_id() + "': reference covers " +
                                               std::to_string(reference.total()) + " sentences, transcript has " +
                                               std::to_string(transcript.size()));
  }
}

std::string_view to_string(TranscriptFormat format) {
  return format == TranscriptFormat::Plain ? "plain" : "spotify-json";
}

TranscriptFormat parse_transcript_format(std::string_view name) {
  if (name == "plain") return TranscriptFormat::Plain;
  if (name == "spotify-json") return TranscriptFormat::SpotifyJson;
  throw Error(ErrorCode::UnsupportedFormat, "unknown transcript format '" + std::string(name) + "'");
}

TranscriptFormat format_for_path(const fs::path& path) {
  return path.extension() == ".json" ? TranscriptFormat::SpotifyJson : TranscriptFormat::Plain;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

[[noreturn]] void parse_error(std::string_view source, const std::string& what) {
  throw Error(ErrorCode::ParseError, std::string(source) + ": " + what);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_size(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::string spotify_transcript_text(std::string_view json_text, std::string_view source_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(source_name, std::string("invalid JSON at byte ") + std::to_string(e.byte) );
  }
  if (!doc.is_object() || !doc.contains("results") || !doc["results"].is_array()) {
    parse_error(source_name, "missing field 'results'");
  }
  std::string text;
  bool found = false;
  const auto& results = doc["results"];
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& result = results[i];
    if (!result.is_object() || !result.contains("alternatives") || !result["alternatives"].is_array()) {
      parse_error(source_name, "results[" + std::to_string(i) + "]: missing field 'alternatives'");
    }
    for (const auto& alternative : result["alternatives"]) {
      if (!alternative.is_object() || !alternative.contains("transcript")) continue;
      if (!alternative["transcript"].is_string()) {
        parse_error(source_name, "results[" + std::to_string(i) + "]: field 'transcript' is not a string");
      }
      const auto& chunk = alternative["transcript"].get_ref<const std::string&>();
      if (!text.empty() && !chunk.empty() && text.back() != ' ' && chunk.front() != ' ') text.push_back(' ');
      text += chunk;
      found = true;
      break;
    }
  }
  if (!found) parse_error(source_name, "missing field 'transcript' in every result");
  return text;
}

Transcript load_transcript(const fs::path& path, TranscriptFormat format) {
  const std::string content = read_file(path);
  const std::string id = path.stem().string();
  if (format == TranscriptFormat::Plain) return tokenize(content, id);
  return tokenize(spotify_transcript_text(content, path.string()), id);
}

Transcript load_transcript(const fs::path& path) { return load_transcript(path, format_for_path(path)); }

Segmentation parse_annotations(std::istream& in, std::string_view source_name) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t total = 0;
  bool have_header = false;
  std::vector<std::size_t> boundaries;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string field = trim(line);
    if (field.empty() || field.front() == '#') continue;
    const std::string where = std::string(source_name) + ":" + std::to_string(line_no);
    if (!have_header) {
      if (field.rfind("N=", 0) != 0 || !parse_size(std::string_view(field).substr(2), total)) {
        throw Error(ErrorCode::ParseError, where + ": expected header 'N=<total>'");
      }
      if (total == 0) throw Error(ErrorCode::OutOfRange, where + ": total must be positive");
      have_header = true;
      continue;
    }
    std::size_t b = 0;
    if (!parse_size(field, b)) throw Error(ErrorCode::ParseError, where + ": '" + field + "' is not an index");
    if (b < 1 || b > total) {
      throw Error(ErrorCode::OutOfRange, where + ": boundary " + field + " outside 1.." + std::to_string(total));
    }
    if (!boundaries.empty() && b <= boundaries.back()) {
      throw Error(ErrorCode::NonMonotonic, where + ": boundary " + field + " does not increase");
    }
    boundaries.push_back(b);
  }
  if (!have_header) throw Error(ErrorCode::ParseError, std::string(source_name) + ": missing header 'N=<total>'");
  if (boundaries.empty() || boundaries.back() != total) boundaries.push_back(total);
  return Segmentation(total, std::move(boundaries));
}

Segmentation load_annotations(const fs::path& path) {
  std::istringstream in(read_file(path));
  return parse_annotations(in, path.string());
}

std::string format_annotations(const Segmentation& seg) {
  std::string out = "N=" + std::to_string(seg.total()) + "\n";
  for (std::size_t b : seg.boundaries()) out += std::to_string(b) + "\n";
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delimiter)) out.push_back(trim(field));
  if (!line.empty() && line.back() == delimiter) out.emplace_back();
  return out;
}

}  // namespace

SurveyTable parse_survey(std::istream& in, std::string_view source_name) {
  static const std::vector<std::string> kColumns = {"segment_id", "title_source", "participant_id", "score"};
  std::string line;
  std::size_t line_no = 0;
  char delimiter = ',';
  std::vector<std::size_t> column_of(kColumns.size());
  bool have_header = false;
  SurveyTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::string where = std::string(source_name) + ":" + std::to_string(line_no);
    if (!have_header) {
      delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
      const auto header = split_fields(line, delimiter);
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        auto it = std::find(header.begin(), header.end(), kColumns[c]);
        if (it == header.end()) throw Error(ErrorCode::ParseError, where + ": header lacks column '" + kColumns[c] + "'");
        column_of[c] = static_cast<std::size_t>(it - header.begin());
      }
      have_header = true;
      continue;
    }
    const auto fields = split_fields(line, delimiter);
    const std::size_t needed = *std::max_element(column_of.begin(), column_of.end()) + 1;
    if (fields.size() < needed) throw Error(ErrorCode::ParseError, where + ": too few fields");

    SurveyRow row;
    row.segment_id = fields[column_of[0]];
    row.title_source = fields[column_of[1]];
    row.participant_id = fields[column_of[2]];
    const std::string& score = fields[column_of[3]];
    int value = 0;
    auto [ptr, ec] = std::from_chars(score.data(), score.data() + score.size(), value);
    if (ec != std::errc{} || ptr != score.data() + score.size() || score.empty()) {
      throw Error(ErrorCode::BadScore, where + ": score '" + score + "' is not an integer");
    }
    row.score = value;
    try {
      table.add(std::move(row));
    } catch (const Error& e) {
      throw Error(e.code(), where + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::ParseError, std::string(source_name) + ": empty survey table");
  return table;
}

SurveyTable load_survey(const fs::path& path) {
  std::istringstream in(read_file(path));
  return parse_survey(in, path.string());
}

std::vector<AnnotatedEpisode> load_corpus_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  std::vector<fs::path> transcripts;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".txt" || ext == ".json") transcripts.push_back(entry.path());
  }
  std::sort(transcripts.begin(), transcripts.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  std::vector<AnnotatedEpisode> out;
  std::string missing;
  for (const auto& path : transcripts) {
    fs::path annotation = path;
    annotation.replace_extension(".seg");
    if (!fs::exists(annotation)) {
      missing += (missing.empty() ? "" : ", ") + path.filename().string();
      continue;
    }
    Transcript t = load_transcript(path);
    Segmentation ref = load_annotations(annotation);
    out.emplace_back(std::move(t), std::move(ref),
                     std::map<std::string, std::string>{{"source", path.filename().string()},
                                                        {"format", std::string(to_string(format_for_path(path)))}});
  }
  if (!missing.empty()) throw Error(ErrorCode::ParseError, "transcripts without annotations: " + missing);
  return out;
}

void SynthConfig::validate() const {
  auto check = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
  };
  check(episodes >= 1, "episodes must be >= 1");
  check(topics_min >= 1 && topics_min <= topics_max, "invalid topics range");
  check(topics_max <= topic_pool, "topic pool smaller than topics per episode");
  check(sentences_min >= 1 && sentences_min <= sentences_max, "invalid sentences range");
  check(tokens_min >= 1 && tokens_min <= tokens_max, "invalid tokens range");
  check(vocab_per_topic >= 1, "vocabulary per topic must be >= 1");
  check(overlap >= 0.0 && overlap < 1.0, "overlap must lie in [0, 1)");
  check(overlap == 0.0 || shared_vocab >= 1, "shared vocabulary needed when overlap > 0");
}

std::string synth_topic_word(std::size_t topic, std::size_t index) {
  std::ostringstream out;
  out << "tp" << std::setw(2) << std::setfill('0') << topic << "w" << std::setw(3) << index;
  return out.str();
}

std::string synth_shared_word(std::size_t index) {
  std::ostringstream out;
  out << "shared" << std::setw(3) << std::setfill('0') << index;
  return out.str();
}

namespace {

// Portable draws: std distributions are implementation-defined, so build on
// raw 64-bit engine output.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<AnnotatedEpisode> synth_corpus(const SynthConfig& config) {
  config.validate();
  Draw draw(config.seed);
  std::vector<AnnotatedEpisode> out;
  out.reserve(config.episodes);
  for (std::size_t e = 0; e < config.episodes; ++e) {
    const std::size_t topic_count = draw.between(config.topics_min, config.topics_max);
    std::vector<std::size_t> pool(config.topic_pool);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    std::vector<std::size_t> topics;
    for (std::size_t t = 0; t < topic_count; ++t) {
      const std::size_t pick = t + draw.below(pool.size() - t);
      std::swap(pool[t], pool[pick]);
      topics.push_back(pool[t]);
    }

    std::string text;
    std::vector<std::size_t> masses;
    std::string topic_list;
    for (std::size_t topic : topics) {
      const std::size_t sentences = draw.between(config.sentences_min, config.sentences_max);
      masses.push_back(sentences);
      topic_list += (topic_list.empty() ? "" : ",") + std::to_string(topic);
      for (std::size_t s = 0; s < sentences; ++s) {
        const std::size_t tokens = draw.between(config.tokens_min, config.tokens_max);
        for (std::size_t i = 0; i < tokens; ++i) {
          if (i > 0) text.push_back(' ');
          if (draw.uniform() < config.overlap) {
            text += synth_shared_word(draw.below(config.shared_vocab));
          } else {
            text += synth_topic_word(topic, draw.below(config.vocab_per_topic));
          }
        }
        text += ". ";
      }
    }
    if (!text.empty()) text.pop_back();

    std::ostringstream id;
    id << "synth-" << config.seed << "-" << std::setw(3) << std::setfill('0') << e;
    Transcript transcript = tokenize(text, id.str());
    out.emplace_back(std::move(transcript), Segmentation::from_masses(masses),
                     std::map<std::string, std::string>{{"generator", "synth_corpus"},
                                                        {"seed", std::to_string(config.seed)},
                                                        {"topics", topic_list}});
  }
  return out;
}

EmbeddingStore synth_embeddings(const SynthConfig& config, std::size_t dimension, std::uint64_t seed) {
  config.validate();
  Draw draw(seed);
  EmbeddingStore store(dimension, "synth_embeddings seed=" + std::to_string(seed));
  auto random_unit = [&] {
    std::vector<double> v(dimension);
    double sq = 0.0;
    for (double& x : v) {
      x = draw.normal();
      sq += x * x;
    }
    const double norm = std::sqrt(sq);
    for (double& x : v) x /= norm;
    return v;
  };
  for (std::size_t topic = 0; topic < config.topic_pool; ++topic) {
    const auto centre = random_unit();
    for (std::size_t i = 0; i < config.vocab_per_topic; ++i) {
      const auto noise = random_unit();
      std::vector<double> v(dimension);
      for (std::size_t j = 0; j < dimension; ++j) v[j] = centre[j] + 0.5 * noise[j];
      store.insert(synth_topic_word(topic, i), std::move(v));
    }
  }
  for (std::size_t i = 0; i < config.shared_vocab; ++i) store.insert(synth_shared_word(i), random_unit());
  return store;
}

void write_vectors(std::ostream& out, const EmbeddingStore& store, const std::vector<std::string>& order) {
  out << std::fixed << std::setprecision(6);
  for (const auto& token : order) {
    const auto* vec = store.find(token);
    if (vec == nullptr) throw Error(ErrorCode::InvalidArgument, "token '" + token + "' not in store");
    out << token;
    for (double v : *vec) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace podseg
