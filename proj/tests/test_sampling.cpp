#include <doctest.h>

#include <array>
#include <vector>

#include "qlp/random.hpp"
#include "qlp/weighted_table.hpp"
#include "test_support.hpp"

using namespace qlp;
using namespace qlp::test;

TEST_CASE("build_cumulative forms exact prefix sums") {
  const std::vector<double> w{1, 4, 1};
  const auto table = build_cumulative(w);
  REQUIRE(table.size() == 3);
  CHECK(table.cumulative()[0] == 1.0);
  CHECK(table.cumulative()[1] == 5.0);
  CHECK(table.cumulative()[2] == 6.0);
  CHECK(table.total() == 6.0);

  const std::vector<double> zeros_then{0, 0, 3};
  const auto table2 = build_cumulative(zeros_then);
  CHECK(table2.cumulative()[0] == 0.0);
  CHECK(table2.cumulative()[1] == 0.0);
  CHECK(table2.cumulative()[2] == 3.0);
}

TEST_CASE("build_cumulative rejects bad weight vectors") {
  CHECK_THROWS_AS(build_cumulative(std::vector<double>{}), EmptySupportError);
  CHECK_THROWS_AS(build_cumulative(std::vector<double>{0, 0}),
                  EmptySupportError);
  CHECK_THROWS_AS(build_cumulative(std::vector<double>{1, -2}),
                  InvalidWeightError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(build_cumulative(std::vector<double>{nan}),
                  InvalidWeightError);
}

TEST_CASE("bisection returns the smallest index with x below the prefix sum") {
  const auto table = build_cumulative(std::vector<double>{0, 0, 3});
  CHECK(table.index_for(0.0) == 2);
  CHECK(table.index_for(2.9) == 2);
  const auto mixed = build_cumulative(std::vector<double>{2, 0, 5});
  CHECK(mixed.index_for(0.0) == 0);
  CHECK(mixed.index_for(1.999) == 0);
  CHECK(mixed.index_for(2.0) == 2);  // never the zero-weight index 1
  CHECK(mixed.index_for(6.9) == 2);
}

TEST_CASE("degenerate tables sample deterministically") {
  RandomStream rng(11, 0);
  const auto single = build_cumulative(std::vector<double>{5});
  const auto tail = build_cumulative(std::vector<double>{0, 0, 3});
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_index(single, rng) == 0);
    CHECK(sample_index(tail, rng) == 2);
  }
}

TEST_CASE("sample_index matches weights within TV 0.01 on [1,4,1]") {
  const auto table = build_cumulative(std::vector<double>{1, 4, 1});
  RandomStream rng(123, 0);
  std::array<std::uint64_t, 3> counts{};
  const int draws = 100000;
  for (int d = 0; d < draws; ++d) ++counts[sample_index(table, rng)];
  const std::vector<double> expected{1.0 / 6, 4.0 / 6, 1.0 / 6};
  std::vector<double> empirical(3);
  for (int i = 0; i < 3; ++i)
    empirical[i] = static_cast<double>(counts[i]) / draws;
  CHECK(tv_distance(empirical, expected) < 0.01);
}

TEST_CASE("chi-squared goodness of fit on 20 random weight vectors") {
  RandomStream meta(99, 0);
  const int draws = 100000;
  for (int trial = 0; trial < 20; ++trial) {
    const int len = 3 + static_cast<int>(meta.next_index(15));
    std::vector<double> weights(len);
    double total = 0;
    for (auto& w : weights) {
      w = meta.next_double() * 10.0;
      total += w;
    }
    const auto table = build_cumulative(weights);
    RandomStream rng(99, 1 + static_cast<std::uint64_t>(trial));
    std::vector<std::uint64_t> counts(len, 0);
    for (int d = 0; d < draws; ++d) ++counts[sample_index(table, rng)];

    double chi2 = 0.0;
    for (int i = 0; i < len; ++i) {
      const double expected = draws * weights[i] / total;
      chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    // significance 0.001 (z = 3.0902)
    CHECK(chi2 < chi_squared_critical(len - 1, 3.0902));
  }
}

TEST_CASE("zero-weight indices are never sampled") {
  const auto table = build_cumulative(std::vector<double>{0, 1, 0, 2, 0});
  RandomStream rng(5, 5);
  for (int d = 0; d < 20000; ++d) {
    const auto idx = sample_index(table, rng);
    CHECK((idx == 1 || idx == 3));
  }
}

TEST_CASE("derive_stream determinism and independence") {
  SUBCASE("same pair, same sequence") {
    RandomStream a = derive_stream(42, 7);
    RandomStream b = derive_stream(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  }
  SUBCASE("different index, different sequence") {
    RandomStream a = derive_stream(42, 0);
    RandomStream b = derive_stream(42, 1);
    int differing = 0;
    for (int i = 0; i < 16; ++i)
      if (a.next_u64() != b.next_u64()) ++differing;
    CHECK(differing > 0);
  }
  SUBCASE("different master seed, different sequence") {
    RandomStream a = derive_stream(1, 3);
    RandomStream b = derive_stream(2, 3);
    int differing = 0;
    for (int i = 0; i < 16; ++i)
      if (a.next_u64() != b.next_u64()) ++differing;
    CHECK(differing > 0);
  }
}

TEST_CASE("next_index and next_double stay in range") {
  RandomStream rng(1234, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto idx = rng.next_index(7);
    CHECK(idx >= 0);
    CHECK(idx < 7);
    const double x = rng.next_double(3.5);
    CHECK(x >= 0.0);
    CHECK(x < 3.5);
  }
  CHECK_THROWS_AS(rng.next_index(0), ParameterError);
}
