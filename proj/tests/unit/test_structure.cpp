#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "json.hpp"

#include "ipac/error.hpp"
#include "ipac/harness.hpp"
#include "ipac/oracles.hpp"
#include "ipac/structure.hpp"

using namespace ipac;

TEST_CASE("zero-sum tuple counts have closed forms on regular cubes") {
  // all differences equal: the sign pattern must balance, indices are free
  CHECK(r_ell(hypercube(4), 1) == 2 * 16);
  CHECK(r_ell(hypercube(4), 2) == 6 * 256);
  CHECK(r_ell(hypercube(7), 1) == 2 * 49);

  // distinct differences: tuples must pair up coordinate by coordinate
  CHECK(r_ell(distinct_cube(5), 1) == 2 * 5);
  CHECK(r_ell(geometric_cube(5), 1) == 2 * 5);
}

TEST_CASE("iterated table equals one-shot counts") {
  const TwoCube A = make_two_cube({{4, -2}, {-3, 5}, {1, 0}});
  const auto table = r_ell_table(A, 4);
  REQUIRE(table.size() == 4);
  for (int ell = 1; ell <= 4; ++ell) {
    CHECK(table[ell - 1] == r_ell(A, ell));
    CHECK(table[ell - 1] == oracles::zero_sum_signed_tuples(A.differences, 2 * ell));
  }
}

TEST_CASE("classification separates clean and decorated solution counts") {
  const auto sidon = sidon_classify({1, 2, 5, 11});
  CHECK(sidon.cls == SidonClass::sidon);
  CHECK(sidon.pair_count == sidon.pair_target);
  CHECK(sidon.pair_target == 4 * (2 * 4 - 1));

  const auto weak = sidon_classify({1, 2, 3, 4});  // 1 + 4 = 2 + 3
  CHECK(weak.cls != SidonClass::sidon);
  CHECK(weak.pair_count > weak.pair_target);
  CHECK(weak.signed_limit == 100 * 16);

  const auto [pairs, signs] = oracles::sidon_counts({1, 2, 5, 11});
  CHECK(sidon.pair_count == pairs);
  CHECK(sidon.signed_count == signs);

  CHECK_THROWS_AS((void)sidon_classify({}), Error);
  CHECK_THROWS_AS((void)sidon_classify({3, 3}), Error);
}

TEST_CASE("greedy distinct-sum sequence matches its known prefix") {
  CHECK(mian_chowla(10) ==
        std::vector<std::int64_t>{1, 2, 4, 8, 13, 21, 31, 45, 66, 81});
  const auto c = sidon_classify(mian_chowla(8));
  CHECK(c.cls == SidonClass::sidon);
}

TEST_CASE("dispersion values follow the closed formula") {
  // r_1 = 2 n^2 on the hypercube, so R = 2 n^2 / n^{2.5} + exp(-n/C)
  CHECK(halasz_R(hypercube(16), 1.0, 1) ==
        doctest::Approx(0.50000011253517473).epsilon(1e-14));
  CHECK(halasz_R_formula(BigInt(512), 16, 1.0, 1) ==
        doctest::Approx(0.50000011253517473).epsilon(1e-14));

  const auto one = halasz_R_min(hypercube(8), 2.0, 1);
  const auto three = halasz_R_min(hypercube(8), 2.0, 3);
  CHECK(three.value <= one.value);
  CHECK(one.ell == 1);
}

TEST_CASE("concentration exponent bound clamps to one when useless") {
  const auto grid = default_nu_grid();
  REQUIRE(grid.size() == 64);
  CHECK(grid.front() == doctest::Approx(1e-6));
  CHECK(grid.back() == 1.0);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);

  const auto useless = mu_bound_from_R(1e9, 4, 1.0, grid);
  CHECK(useless.vacuous);
  CHECK(useless.mu == 1.0);

  const auto useful = mu_bound_from_R(1e-6, 4096, 4.0, grid);
  CHECK_FALSE(useful.vacuous);
  CHECK(useful.mu < 1.0);
  CHECK(useful.mu > 0.0);
}

TEST_CASE("binary entropy basics") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) == doctest::Approx(0.81127812445913283).epsilon(1e-15));
  CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-15));
  CHECK_THROWS_AS((void)binary_entropy(-0.1), Error);
  CHECK_THROWS_AS((void)binary_entropy(1.1), Error);
}

TEST_CASE("entropy parameter solver hits both branch equations") {
  for (double lambda : {0.1, 0.25, 0.5, 0.9, 1.0}) {
    const auto p = solve_parameters(lambda);
    CHECK(p.lambda == lambda);
    const double g = 1.0 / std::log2(1.0 / p.kappa);
    CHECK(std::fabs(binary_entropy(g) - lambda) < 1e-10);
    CHECK(g <= 0.5 + 1e-12);
    CHECK(std::fabs(p.tau + binary_entropy(p.tau) - lambda) < 1e-10);
  }
  CHECK(solve_parameters(1.0).kappa == 0.25);
  CHECK_THROWS_AS((void)solve_parameters(0.0), Error);
  CHECK_THROWS_AS((void)solve_parameters(1.2), Error);
}

TEST_CASE("profile json carries exact counts and decimal bounds") {
  const auto profile = structure_profile(distinct_cube(6), 2.0, 3);
  CHECK(profile.n == 6);
  CHECK(profile.r.size() == 3);
  CHECK(profile.r.at(1) == 12);
  CHECK(profile.R_values.size() == 3);

  const auto j = nlohmann::json::parse(structure_profile_json(profile));
  CHECK(j["n"] == 6);
  CHECK(j["C"] == 2.0);
  CHECK(j["r"]["1"] == 12);
  CHECK(j["R_min"]["ell"] == profile.R_min.ell);
  CHECK(j["sidon"]["class"] == "weak_sidon");
  CHECK(j.contains("mu"));
  const double rmin = std::stod(j["R_min"]["value"].get<std::string>());
  CHECK(rmin == doctest::Approx(profile.R_min.value).epsilon(1e-15));
}
