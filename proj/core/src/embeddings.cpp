#include "podseg/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "podseg/error.hpp"
#include "podseg/hash.hpp"

namespace podseg {

EmbeddingStore::EmbeddingStore(std::size_t dimension, std::string identity)
    : dimension_(dimension), identity_(std::move(identity)) {
  if (dimension_ == 0) throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
}

void EmbeddingStore::insert(std::string token, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw Error(ErrorCode::FormatError, "vector for '" + token + "' has " + std::to_string(vector.size()) +
                                            " components, expected " + std::to_string(dimension_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) throw Error(ErrorCode::FormatError, "non-finite component for '" + token + "'");
  }
  table_.insert_or_assign(std::move(token), std::move(vector));
}

const std::vector<double>* EmbeddingStore::find(std::string_view token) const {
  auto it = table_.find(token);
  return it == table_.end() ? nullptr : &it->second;
}

namespace {

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_unsigned(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::optional<double> parse_double(std::string_view s) {
  // from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

[[noreturn]] void format_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

EmbeddingStore load_vectors(std::istream& source) {
  EmbeddingStore store;
  std::string line;
  std::size_t line_no = 0;
  bool have_store = false;
  while (std::getline(source, line)) {
    ++line_no;
    const auto fields = fields_of(line);
    if (fields.empty()) continue;

    std::size_t count = 0, dim = 0;
    if (line_no == 1 && fields.size() == 2 && parse_unsigned(fields[0], count) && parse_unsigned(fields[1], dim)) {
      continue;  // word2vec-style "count dim" header
    }
    if (fields.size() < 2) format_error(line_no, "expected a token followed by at least one component");

    const std::size_t d = fields.size() - 1;
    if (!have_store) {
      store = EmbeddingStore(d);
      have_store = true;
    } else if (d != store.dimension()) {
      format_error(line_no, "ragged dimension " + std::to_string(d) + ", expected " +
                                std::to_string(store.dimension()));
    }
    std::vector<double> vec;
    vec.reserve(d);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto v = parse_double(fields[i]);
      if (!v) format_error(line_no, "non-numeric field '" + std::string(fields[i]) + "'");
      vec.push_back(*v);
    }
    store.insert(std::string(fields[0]), std::move(vec));
  }
  if (!have_store) throw Error(ErrorCode::FormatError, "no vectors found");
  return store;
}

EmbeddingStore load_vectors_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open embedding file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  std::istringstream stream(content);
  EmbeddingStore store;
  try {
    store = load_vectors(stream);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
  store.set_identity(path + " sha256:" + sha256_hex(content));
  return store;
}

std::vector<double> sentence_vector(const Sentence& sentence, const EmbeddingStore& store,
                                    const TokenWeights* weights) {
  if (store.empty()) throw Error(ErrorCode::InvalidArgument, "embedding store is empty");
  std::vector<double> out(store.dimension(), 0.0);
  for (const auto& token : sentence.tokens) {
    const auto* vec = store.find(token);
    if (vec == nullptr) continue;
    double weight = 1.0;
    if (weights != nullptr) {
      if (auto it = weights->find(token); it != weights->end()) weight = it->second;
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weight * (*vec)[i];
  }
  return out;
}

std::vector<std::vector<double>> sentence_vectors(const Transcript& transcript, const EmbeddingStore& store,
                                                  const TokenWeights* weights) {
  std::vector<std::vector<double>> out;
  out.reserve(transcript.size());
  for (const Sentence& s : transcript.sentences()) out.push_back(sentence_vector(s, store, weights));
  return out;
}

TokenWeights idf_weights(const Transcript& transcript) {
  std::unordered_map<std::string, std::size_t> df;
  for (const Sentence& s : transcript.sentences()) {
    std::unordered_set<std::string_view> seen(s.tokens.begin(), s.tokens.end());
    for (auto token : seen) ++df[std::string(token)];
  }
  TokenWeights out;
  const double n = static_cast<double>(transcript.size());
  for (const auto& [token, count] : df) out.emplace(token, std::log(n / static_cast<double>(count)));
  return out;
}

}  // namespace podseg
