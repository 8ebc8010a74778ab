#include <doctest.h>

#include <cmath>
#include <random>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "podseg/metrics.hpp"

using namespace podseg;

namespace {

Segmentation masses(std::vector<std::size_t> m) { return Segmentation::from_masses(m); }

}  // namespace

TEST_CASE("worked example: [3,3] against [6] at k=2") {
  const auto ref = masses({3, 3});
  const auto hyp = masses({6});
  const auto k = WindowConfig::explicit_width(2);
  CHECK(pk(ref, hyp, k) == 0.5);
  CHECK(window_diff(ref, hyp, k) == 0.5);
  const auto counts = oracle::enumerate_windows(ref, hyp, 2);
  CHECK(counts.windows == 4);
  CHECK(counts.pk_errors == 2);
}

TEST_CASE("identical segmentations score zero") {
  const auto ref = masses({2, 5, 1, 4});
  CHECK(pk(ref, ref, WindowConfig::half_mean_segment()) == 0.0);
  CHECK(window_diff(ref, ref, WindowConfig::explicit_width(3)) == 0.0);
}

TEST_CASE("derived window is half the mean reference segment") {
  CHECK(WindowConfig::half_mean_segment().resolve(masses({10, 10})) == 5);
  CHECK(WindowConfig::half_mean_segment().resolve(masses({3, 4})) == 2);  // 1.75 rounds to 2
  CHECK(WindowConfig::half_mean_segment().resolve(masses({1, 1, 1})) == 1);
  CHECK(WindowConfig::explicit_width(4).resolve(masses({1, 1})) == 4);
  CHECK(code_of([] { WindowConfig::explicit_width(0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("metric errors") {
  CHECK(code_of([] { pk(masses({2, 2}), masses({5}), WindowConfig::explicit_width(1)); }) ==
        ErrorCode::LengthMismatch);
  CHECK(code_of([] { window_diff(masses({2, 2}), masses({4}), WindowConfig::explicit_width(4)); }) ==
        ErrorCode::WindowTooLarge);
}

TEST_CASE("exhaustive agreement with window enumeration for N <= 12") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t rm = 0; rm < count; ++rm) {
      const auto ref = oracle::from_mask(n, rm);
      const auto window = WindowConfig::half_mean_segment();
      const std::size_t k = window.resolve(ref);
      if (k >= n) continue;
      for (std::uint64_t hm = 0; hm < count; ++hm) {
        const auto hyp = oracle::from_mask(n, hm);
        const double p = pk(ref, hyp, window);
        const double w = window_diff(ref, hyp, window);
        if (p != oracle::brute_pk(ref, hyp, k) || w != oracle::brute_wd(ref, hyp, k)) {
          FAIL("mismatch at n=" << n << " ref=" << rm << " hyp=" << hm);
        }
      }
    }
  }
}

TEST_CASE("window diff never falls below pk") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = 2 + rng() % 150;
    const auto ref = oracle::random_segmentation(rng, n);
    const auto hyp = oracle::random_segmentation(rng, n);
    const auto k = WindowConfig::explicit_width(1 + rng() % (n - 1));
    const double p = pk(ref, hyp, k);
    const double w = window_diff(ref, hyp, k);
    CHECK(w >= p);
    CHECK(p >= 0.0);
    CHECK(w <= 1.0);
  }
}

TEST_CASE("random baseline") {
  const auto all = random_baseline(12, 1.0, 99);
  CHECK(all.masses() == std::vector<std::size_t>(12, 1));
  CHECK(random_baseline(100, 1e-12, 42).segment_count() == 1);
  CHECK(random_baseline(1, 0.5, 1).boundaries() == std::vector<std::size_t>{1});
  CHECK(random_baseline(50, 0.3, 7) == random_baseline(50, 0.3, 7));
  CHECK(code_of([] { random_baseline(10, 0.0, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { random_baseline(10, 1.5, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { random_baseline(0, 0.5, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("random baseline is pinned across platforms") {
  // The draw is defined by mt19937_64 and the top 53 bits of each output.
  std::mt19937_64 rng(2024);
  std::vector<std::size_t> expected;
  for (std::size_t gap = 1; gap < 30; ++gap) {
    if (static_cast<double>(rng() >> 11) / 9007199254740992.0 < 0.25) expected.push_back(gap);
  }
  expected.push_back(30);
  CHECK(random_baseline(30, 0.25, 2024).boundaries() == expected);
}

TEST_CASE("baseline boundary frequency concentrates around the probability") {
  const double prob = 0.2;
  const std::size_t n = 101;
  std::size_t boundaries = 0;
  const std::size_t draws = 2000;
  for (std::size_t seed = 0; seed < draws; ++seed) boundaries += random_baseline(n, prob, seed).segment_count() - 1;
  const double trials = static_cast<double>(draws * (n - 1));
  const double freq = static_cast<double>(boundaries) / trials;
  CHECK(std::abs(freq - prob) <= 3.0 * std::sqrt(prob * (1 - prob) / trials));
}

TEST_CASE("boundary rates") {
  CHECK(boundary_rate(masses({4, 6})) == doctest::Approx(0.2));
  const std::vector<Segmentation> refs{masses({4, 6}), masses({1, 1, 1, 1})};
  CHECK(inverse_mean_segment_count(refs) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("evaluate and baseline scores") {
  const auto ref = masses({5, 5, 5, 5});
  const auto hyp = masses({10, 10});
  const auto r = evaluate("ep", ref, hyp, WindowConfig::half_mean_segment());
  CHECK(r.episode_id == "ep");
  CHECK(r.window == 3);
  CHECK(r.pk == pk(ref, hyp, WindowConfig::explicit_width(3)));

  const auto b = baseline_scores(ref, 0.2, 10, 5, WindowConfig::half_mean_segment());
  double sum_pk = 0;
  for (std::uint64_t s = 5; s < 15; ++s) sum_pk += pk(ref, random_baseline(20, 0.2, s), WindowConfig::explicit_width(3));
  CHECK(b.iterations == 10);
  CHECK(b.pk == doctest::Approx(sum_pk / 10).epsilon(1e-15));
}
