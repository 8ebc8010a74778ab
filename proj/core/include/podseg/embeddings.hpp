#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "podseg/text_model.hpp"

namespace podseg {

// Word -> d-dimensional vector table. Immutable after loading.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dimension, std::string identity = {});

  // Overwrites an existing entry. Throws FormatError on wrong size or
  // non-finite components.
  void insert(std::string token, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }
  // nullptr when the token is out of vocabulary.
  const std::vector<double>* find(std::string_view token) const;

  // Free-form provenance string (for example "path sha256:...").
  const std::string& identity() const { return identity_; }
  void set_identity(std::string identity) { identity_ = std::move(identity); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>, Hash, std::equal_to<>> table_;
  std::string identity_;
};

// GloVe-style text: "token v1 ... vd" per line, optional "count dim" header.
EmbeddingStore load_vectors(std::istream& source);
EmbeddingStore load_vectors_file(const std::string& path);

using TokenWeights = std::unordered_map<std::string, double>;

// Sum of in-vocabulary token vectors; out-of-vocabulary tokens are skipped.
// Optional weights multiply each token's vector (missing tokens weigh 1).
std::vector<double> sentence_vector(const Sentence& sentence, const EmbeddingStore& store,
                                    const TokenWeights* weights = nullptr);

std::vector<std::vector<double>> sentence_vectors(const Transcript& transcript,
                                                  const EmbeddingStore& store,
                                                  const TokenWeights* weights = nullptr);

// log(N / df) over the transcript's sentences.
TokenWeights idf_weights(const Transcript& transcript);

}  // namespace podseg
