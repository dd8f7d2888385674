#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "ipac/distribution.hpp"
#include "ipac/error.hpp"
#include "ipac/harness.hpp"
#include "ipac/oracles.hpp"

using namespace ipac;

namespace {

// Pascal-row binomials, independent of any library counting code.
std::vector<BigInt> binomial_row(int n) {
  std::vector<BigInt> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t k = 0; k < row.size(); ++k) {
      next[k] += row[k];
      next[k + 1] += row[k];
    }
    row = std::move(next);
  }
  return row;
}

}  // namespace

TEST_CASE("all-ones direction against the full cube is binomial") {
  const int n = 10;
  const VectorSet B = full_cube(n);
  const Direction x(n, 1);
  const auto dist = inner_product_distribution(x, B);
  const auto row = binomial_row(n);
  REQUIRE(dist.size() == static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    CHECK(dist.support()[k] == 2 * k - n);
    CHECK(dist.mass()[k] == Rational(row[k], BigInt(1) << n));
  }
  const auto conc = concentration_probability(x, B);
  CHECK(conc.value == Rational(row[n / 2], BigInt(1) << n));
  CHECK(conc.argmax == 0);

  // the coordinate-convolution path lands on the same law
  const auto conv = cube_sum_distribution(x);
  CHECK(conv.support() == dist.support());
  CHECK(conv.mass() == dist.mass());
}

TEST_CASE("two-member set by hand") {
  const VectorSet B = make_vector_set(2, {{+1, +1}, {+1, -1}});
  const auto dist = inner_product_distribution({1, 1}, B);
  REQUIRE(dist.size() == 2);
  CHECK(dist.mass_at(0) == Rational(1, 2));
  CHECK(dist.mass_at(2) == Rational(1, 2));
  const auto [m, arg] = dist.max_mass();
  CHECK(m == Rational(1, 2));
  CHECK(arg == 0);  // tie resolves to the smaller sum
}

TEST_CASE("weighted cube sums match full enumeration") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    Rng rng(mix_seed(7, i));
    const int n = static_cast<int>(rng.range(1, 10));
    Direction w(n);
    for (auto& v : w) v = rng.range(-6, 6);
    const auto fast = cube_sum_distribution(w);
    const auto slow = oracles::cube_sum_distribution(w);
    CHECK(fast.support() == slow.support());
    CHECK(fast.mass() == slow.mass());
  }
}

TEST_CASE("interval mass of the 2-cube against itself") {
  const VectorSet B = full_cube(2);
  // inner products over all 16 pairs: |k| <= sqrt(2) keeps only k = 0
  CHECK(interval_mass(B, B, 1.0) == Rational(1, 2));
  // radius 2 covers everything
  CHECK(interval_mass(B, B, 2.0) == 1);
  CHECK_THROWS_AS((void)interval_mass(B, B, -1.0), Error);
}

TEST_CASE("hypercube census sees one concentration everywhere") {
  const VectorSet B = full_cube(3);
  CensusOptions options;
  options.per_direction = true;
  const auto record = direction_census(hypercube(3), B, Rational(1, 4), options);
  CHECK(record.total_directions == 8);
  CHECK(record.exceed_count == 8);  // 3/8 > 1/4 for every sign direction
  for (const auto& e : record.per_direction) {
    CHECK(Rational(e.concentration_num, e.concentration_den) == Rational(3, 8));
    CHECK(e.argmax_k == -1);
  }
}

TEST_CASE("census entries line up with the per-direction recount") {
  Rng rng(mix_seed(11, 0));
  const TwoCube A = make_two_cube({{4, -2}, {-3, 5}, {1, 0}, {-7, 2}});
  std::vector<std::uint64_t> words;
  for (std::uint64_t w = 0; w < 16; w += 3) words.push_back(w);
  const VectorSet B = make_vector_set_packed(4, words);
  CensusOptions options;
  options.per_direction = true;
  const auto record = direction_census(A, B, Rational(1, 2), options);
  const auto slow = oracles::direction_census(A, B);
  REQUIRE(record.per_direction.size() == slow.size());
  for (std::size_t k = 0; k < slow.size(); ++k) {
    CHECK(record.per_direction[k].direction_index == slow[k].direction_index);
    CHECK(record.per_direction[k].concentration_num == slow[k].concentration_num);
    CHECK(record.per_direction[k].concentration_den == slow[k].concentration_den);
    CHECK(record.per_direction[k].argmax_k == slow[k].argmax_k);
  }
}

TEST_CASE("census is worker-count invariant") {
  const VectorSet B = random_subset(8, 0.7, 5);
  CensusOptions one, four;
  one.per_direction = four.per_direction = true;
  one.workers = 1;
  four.workers = 4;
  const auto a = direction_census(hypercube(8), B, Rational(1, 3), one);
  const auto b = direction_census(hypercube(8), B, Rational(1, 3), four);
  CHECK(a.exceed_count == b.exceed_count);
  REQUIRE(a.per_direction.size() == b.per_direction.size());
  for (std::size_t k = 0; k < a.per_direction.size(); ++k) {
    CHECK(a.per_direction[k].direction_index == b.per_direction[k].direction_index);
    CHECK(a.per_direction[k].concentration_num == b.per_direction[k].concentration_num);
    CHECK(a.per_direction[k].argmax_k == b.per_direction[k].argmax_k);
  }
}

TEST_CASE("census csv carries the contract columns") {
  const VectorSet B = full_cube(2);
  CensusOptions options;
  options.per_direction = true;
  const auto record = direction_census(hypercube(2), B, Rational(1, 2), options);
  std::ostringstream os;
  write_census_csv(os, record);
  const std::string text = os.str();
  CHECK(text.rfind("direction_index,concentration_num,concentration_den,argmax_k\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("census budget caps enumeration") {
  const VectorSet B = full_cube(4);
  CensusOptions options;
  options.budget = 8;
  CHECK_THROWS_AS((void)direction_census(hypercube(4), B, Rational(1, 2), options), Error);
}

TEST_CASE("sign flip leaves concentrations fixed on symmetric sets") {
  const VectorSet B = full_cube(6);
  Rng rng(mix_seed(13, 1));
  for (int trial = 0; trial < 5; ++trial) {
    Direction x(6), neg(6);
    for (int j = 0; j < 6; ++j) {
      x[j] = rng.range(-4, 4);
      neg[j] = -x[j];
    }
    const auto a = concentration_probability(x, B);
    const auto b = concentration_probability(neg, B);
    CHECK(a.value == b.value);
  }
}
