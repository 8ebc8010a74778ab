#include <doctest.h>

#include <random>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "podseg/textsplit.hpp"

using namespace podseg;

namespace {

std::vector<Vector> random_vectors(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> v(n, Vector(dim));
  for (auto& row : v) {
    for (double& x : row) x = g(rng);
  }
  return v;
}

std::vector<Vector> two_blocks() {
  std::vector<Vector> v;
  for (int i = 0; i < 5; ++i) v.push_back({1, 0});
  for (int i = 0; i < 5; ++i) v.push_back({0, 1});
  return v;
}

}  // namespace

TEST_CASE("segment score is the norm of the summed vectors") {
  const std::vector<Vector> single{{3, 4}};
  CHECK(segment_score(single, 0, 1) == 5.0);
  const std::vector<Vector> opposite{{1, 0}, {-1, 0}};
  CHECK(segment_score(opposite, 0, 2) == 0.0);
  CHECK(code_of([&] { segment_score(opposite, 1, 1); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { segment_score(opposite, 0, 3); }) == ErrorCode::OutOfRange);
}

TEST_CASE("scorer agrees with direct sums and satisfies the triangle inequality") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = random_vectors(rng, 2 + rng() % 20, 1 + rng() % 6);
    const SegmentScorer scorer(v);
    CHECK(scorer.size() == v.size());
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = a + 1; b <= v.size(); ++b) {
        CHECK(scorer.score(a, b) == doctest::Approx(oracle::norm_of_sum(v, a, b)).epsilon(1e-10));
        for (std::size_t c = a + 1; c < b; ++c) {
          CHECK(segment_score(v, a, b) <= segment_score(v, a, c) + segment_score(v, c, b) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("greedy split on two orthogonal blocks") {
  const auto v = two_blocks();
  CHECK(greedy_split(v, 0.5).boundaries() == std::vector<std::size_t>{5, 10});
  // Every single-split gain, by hand: splitting at t inside a block gains less.
  double best = -1;
  std::size_t best_t = 0;
  for (std::size_t t = 1; t < v.size(); ++t) {
    const double gain = oracle::norm_of_sum(v, 0, t) + oracle::norm_of_sum(v, t, 10) - oracle::norm_of_sum(v, 0, 10);
    if (gain > best) {
      best = gain;
      best_t = t;
    }
  }
  CHECK(best_t == 5);
  CHECK(greedy_split(v, best + 1e-9).segment_count() == 1);
}

TEST_CASE("degenerate inputs give one segment") {
  const std::vector<Vector> zeros(6, Vector{0, 0});
  CHECK(greedy_split(zeros, 0.0).segment_count() == 1);
  CHECK(dynamic_split(zeros, 0.0).segment_count() == 1);
  const std::vector<Vector> one{{1, 2}};
  CHECK(dynamic_split(one, 0.0).boundaries() == std::vector<std::size_t>{1});
  CHECK(greedy_split(one, 0.0).boundaries() == std::vector<std::size_t>{1});
  CHECK(code_of([&] { greedy_split(one, -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("large penalty forces a single segment") {
  std::mt19937_64 rng(2);
  const auto v = random_vectors(rng, 30, 4);
  const SegmentScorer scorer(v);
  CHECK(greedy_split(scorer, scorer.norm_sum()).segment_count() == 1);
  CHECK(dynamic_split(scorer, scorer.norm_sum()).segment_count() == 1);
}

TEST_CASE("dynamic split reaches the exhaustive optimum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pen(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto v = random_vectors(rng, n, 1 + rng() % 4);
    const double p = pen(rng);
    const auto brute = oracle::brute_split(v, p);
    const Segmentation dp = dynamic_split(v, p);
    CHECK(oracle::split_value(v, dp, p) == doctest::Approx(brute.best).epsilon(1e-9));
    CHECK(std::find(brute.argmax.begin(), brute.argmax.end(), dp) != brute.argmax.end());
  }
}

TEST_CASE("dynamic split dominates greedy split") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pen(0.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto v = random_vectors(rng, 1 + rng() % 60, 1 + rng() % 8);
    const SegmentScorer scorer(v);
    const double p = pen(rng);
    CHECK(split_objective(scorer, dynamic_split(scorer, p), p) >= split_objective(scorer, greedy_split(scorer, p), p));
  }
}

TEST_CASE("dynamic split ties prefer fewer segments") {
  // Identical vectors: any split has gain exactly -p, so p = 0 ties everything.
  const std::vector<Vector> same(5, Vector{1, 0});
  CHECK(dynamic_split(same, 0.0).segment_count() == 1);
}

TEST_CASE("penalty from target length") {
  std::mt19937_64 rng(5);
  const auto v = random_vectors(rng, 40, 5);
  const SegmentScorer scorer(v);
  CHECK(greedy_split(scorer, penalty_from_length(scorer, 40)).segment_count() == 1);
  CHECK(code_of([&] { penalty_from_length(scorer, 41); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { penalty_from_length(scorer, 0); }) == ErrorCode::InvalidArgument);
  const std::vector<Vector> zeros(4, Vector{0, 0});
  CHECK(code_of([&] { penalty_from_length(zeros, 2); }) == ErrorCode::DegenerateInput);

  // Pairwise-orthogonal unit vectors: every split gains, so l = 1 splits everywhere.
  std::vector<Vector> basis(8, Vector(8, 0.0));
  for (std::size_t i = 0; i < 8; ++i) basis[i][i] = 1.0;
  const double p = penalty_from_length(basis, 1);
  CHECK(p < 1e-6);
  const auto seg = greedy_split(basis, p);
  CHECK(8.0 / static_cast<double>(seg.segment_count()) <= 2.0);
}

TEST_CASE("segment count never grows with the penalty") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_vectors(rng, 2 + rng() % 80, 1 + rng() % 6);
    const SegmentScorer scorer(v);
    std::size_t greedy_prev = v.size() + 1, dp_prev = v.size() + 1;
    for (double p = 0.0; p <= 6.0; p += 0.25) {
      const auto g = greedy_split(scorer, p);
      const auto d = dynamic_split(scorer, p);
      CHECK(g.segment_count() <= greedy_prev);
      CHECK(d.segment_count() <= dp_prev);
      CHECK(greedy_split(scorer, p) == g);
      CHECK(dynamic_split(scorer, p) == d);
      greedy_prev = g.segment_count();
      dp_prev = d.segment_count();
    }
  }
}

TEST_CASE("larger target lengths never give shorter segments") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_vectors(rng, 20 + rng() % 40, 3);
    const SegmentScorer scorer(v);
    double previous = 0.0;
    for (std::size_t l = 1; l <= scorer.size(); l += 3) {
      const auto seg = greedy_split(scorer, penalty_from_length(scorer, l));
      const double mean = static_cast<double>(scorer.size()) / static_cast<double>(seg.segment_count());
      CHECK(mean >= previous);
      previous = mean;
    }
  }
}

TEST_CASE("split on transcripts") {
  EmbeddingStore store(2);
  store.insert("red", {1, 0});
  store.insert("blue", {0, 1});
  std::string text;
  for (int i = 0; i < 5; ++i) text += "red red. ";
  for (int i = 0; i < 5; ++i) text += "blue blue. ";
  const Transcript t = tokenize(text);
  SplitParams params;
  params.penalty = 0.5;
  CHECK(split(t, store, params).boundaries() == std::vector<std::size_t>{5, 10});
  params.variant = SplitVariant::Greedy;
  CHECK(split(t, store, params).boundaries() == std::vector<std::size_t>{5, 10});

  SplitParams by_length;
  by_length.target_length = 5;
  const auto outcome = split_detailed(t, store, by_length);
  CHECK(outcome.segmentation.boundaries() == std::vector<std::size_t>{5, 10});
  CHECK(outcome.penalty > 0.0);

  SplitParams too_long;
  too_long.target_length = 500;  // clamped to the sentence count
  CHECK(split(t, store, too_long).segment_count() == 1);

  CHECK(code_of([&] { split(tokenize(""), store); }) == ErrorCode::EmptyInput);
  SplitParams none;
  none.target_length.reset();
  CHECK(code_of([&] { split(t, store, none); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("split output is a valid segmentation on random inputs") {
  std::mt19937_64 rng(7);
  EmbeddingStore store(3);
  std::normal_distribution<double> g;
  for (int w = 0; w < 20; ++w) store.insert("w" + std::to_string(w), {g(rng), g(rng), g(rng)});
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text;
    const std::size_t sentences = 1 + rng() % 25;
    for (std::size_t s = 0; s < sentences; ++s) {
      text += "w" + std::to_string(rng() % 20) + " w" + std::to_string(rng() % 20) + ". ";
    }
    const Transcript t = tokenize(text);
    SplitParams params;
    params.target_length = 1 + rng() % 8;
    params.variant = rng() % 2 ? SplitVariant::Greedy : SplitVariant::Dynamic;
    const Segmentation seg = split(t, store, params);
    CHECK(seg.total() == t.size());
  }
}
