#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "ipac/error.hpp"
#include "ipac/fourier.hpp"
#include "ipac/harness.hpp"
#include "ipac/oracles.hpp"

using namespace ipac;

TEST_CASE("transform at frequency zero is one") {
  const VectorSet B = random_subset(6, 0.8, 2);
  const Direction x{2, -1, 3, 1, -2, 1};
  const auto f0 = fourier_coefficient(x, B, 0.0);
  CHECK(f0.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f0.imag() == doctest::Approx(0.0).epsilon(1e-15));
  const auto fp = fourier_coefficient(x, B, 0.37);
  const auto fm = fourier_coefficient(x, B, -0.37);
  CHECK(fp.real() == doctest::Approx(fm.real()).epsilon(1e-14));
  CHECK(fp.imag() == doctest::Approx(-fm.imag()).epsilon(1e-14));
}

TEST_CASE("transform-mean bound dominates the exact concentration") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(mix_seed(3, i));
    const int n = static_cast<int>(rng.range(2, 8));
    const VectorSet B = random_subset(n, 0.9, rng.next());
    Direction x(n);
    std::int64_t M = 0;
    for (auto& v : x) {
      v = rng.range(-3, 3);
      if (v == 0) v = 1;
      M += std::abs(v);
    }
    const auto sb = star_bound(x, B);
    CHECK(sb.nodes == 4 * (M + 1));
    CHECK(sb.error_bound == doctest::Approx(std::numbers::pi * static_cast<double>(M) /
                                            static_cast<double>(sb.nodes)));
    const auto conc = concentration_probability(x, B);
    CHECK(to_double(conc.value) <= sb.value + 1e-9);
  }
}

TEST_CASE("node counts below the sampling threshold are rejected") {
  const VectorSet B = full_cube(3);
  const Direction x{1, 1, 1};  // M = 3, needs >= 7 nodes
  CHECK_THROWS_AS((void)star_bound(x, B, 6), Error);
  CHECK(star_bound(x, B, 7).nodes == 7);
}

TEST_CASE("prefix ranges agree with direct conditional counting") {
  const VectorSet B = random_subset(7, 0.75, 9);
  for (auto y : B.members) {
    const auto path = prefix_path(B, y);
    const auto prof = conditional_profile(B, y, 0.25);
    for (int j = 0; j < 7; ++j) {
      const auto cm = static_cast<std::int64_t>(path.mid[j] - path.lo[j]);
      const auto cp = static_cast<std::int64_t>(path.hi[j] - path.mid[j]);
      const Rational gamma = oracles::conditional_gamma(B, y, j);
      CHECK(Rational(std::min(cm, cp), cm + cp) == gamma);
      CHECK(prof.gamma[j] == gamma);
    }
  }
}

TEST_CASE("activity threshold is decided exactly at the boundary") {
  // every conditional split of the full 2-cube is exactly 1/2
  const VectorSet B = make_vector_set(2, {{-1, -1}, {+1, -1}, {+1, +1}, {-1, +1}});
  REQUIRE(B.size() == 4);
  const auto prof = conditional_profile(B, B.members[0], 0.25);
  CHECK(prof.gamma[0] == Rational(1, 2));
  CHECK(prof.gamma[1] == Rational(1, 2));
  CHECK(prof.active == std::vector<int>{0, 1});
  const auto tight = conditional_profile(B, B.members[0], 0.5);
  CHECK(tight.active == std::vector<int>{0, 1});
  const auto over = conditional_profile(B, B.members[0], 0.5000001);
  CHECK(over.active.empty());
}

TEST_CASE("half phases match the conditional suffix transforms") {
  Rng rng(mix_seed(17, 4));
  const int n = 6;
  const VectorSet B = random_subset(n, 0.8, 21);
  const double eta = 0.83;
  for (int trial = 0; trial < 8; ++trial) {
    const auto y = B.members[rng.below(B.size())];
    Direction x(n);
    for (auto& v : x) v = rng.below(2) ? 1 : -1;
    const auto prof = phase_profile(x, B, y, eta, 0.1);
    for (int j = 0; j < n; ++j) {
      const auto zp = oracles::conditional_suffix_mean(x, B, y, eta, j, +1);
      const auto zm = oracles::conditional_suffix_mean(x, B, y, eta, j, -1);
      const auto prod = zp * std::conj(zm);
      if (std::abs(prod) < 1e-15 || prof.zero_product[j]) {
        CHECK(prof.phi[j] == 0.0);
        continue;
      }
      CHECK(prof.phi[j] == doctest::Approx(std::arg(prod) / 2.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("strong coordinates apply the shared threshold expression") {
  const VectorSet B = random_subset(6, 0.8, 33);
  const double eta = 1.1;
  const Direction x{1, -1, 1, 1, -1, 1};
  const auto y = B.members[3];
  const auto prof = phase_profile(x, B, y, eta, 0.05);
  const auto cond = conditional_profile(B, y, 0.05);
  std::vector<int> expect;
  for (int j : cond.active) {
    const double s = std::sin(prof.phi[j] + static_cast<double>(x[j]) * eta);
    if (s * s >= strong_threshold(eta)) expect.push_back(j);
  }
  CHECK(prof.strong == expect);
}

TEST_CASE("profile table rows equal the per-member scans") {
  const VectorSet B = random_subset(5, 0.9, 8);
  const Direction x{1, -1, -1, 1, 1};
  const double eta = 0.59;
  const auto table = build_pair_profiles(B, x, eta);
  REQUIRE(table.size == B.size());
  for (std::size_t m = 0; m < B.size(); ++m) {
    const auto prof = phase_profile(x, B, B.members[m], eta, 0.25);
    const auto path = prefix_path(B, B.members[m]);
    for (int j = 0; j < 5; ++j) {
      const auto cell = table.at(m, j);
      const auto cm = static_cast<std::int64_t>(path.mid[j] - path.lo[j]);
      const auto cp = static_cast<std::int64_t>(path.hi[j] - path.mid[j]);
      CHECK(table.gamma_min[cell] == std::min(cm, cp));
      CHECK(table.gamma_tot[cell] == cm + cp);
      // the table sums suffixes bottom-up, the scan folds top-down, so the
      // phases agree to rounding, not bit for bit
      CHECK(std::fabs(table.phi[cell] - prof.phi[j]) <= 1e-12);
      CHECK(table.zero_product[cell] == prof.zero_product[j]);
    }
  }
}

TEST_CASE("descending scan restores snapshots bit for bit") {
  const VectorSet B = random_subset(6, 0.7, 12);
  const Direction x{1, 1, -1, 1, -1, -1};
  const double eta = 0.41;
  DescendingScan a(B, eta), b(B, eta);
  const auto path = prefix_path(B, B.members[0]);
  const double pa = a.phase_at(path, 5);
  const double pb = b.phase_at(path, 5);
  const auto snapshot = a.weights();
  a.fold(5, +1);
  (void)a.phase_at(path, 4);
  a.set_weights(snapshot);
  a.fold(5, +1);
  b.fold(5, +1);
  const double qa = a.phase_at(path, 4);
  const double qb = b.phase_at(path, 4);
  CHECK(pa == pb);
  CHECK(qa == qb);
  const auto& wa = a.weights();
  const auto& wb = b.weights();
  for (std::size_t m = 0; m < wa.size(); ++m) {
    CHECK(wa[m].real() == wb[m].real());
    CHECK(wa[m].imag() == wb[m].imag());
  }
}

TEST_CASE("product bound is exact on a singleton set") {
  const VectorSet B = make_vector_set(3, {{+1, -1, +1}});
  const auto r = product_bound_check({1, 1, 1}, B, 0.7);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.holds());
}

TEST_CASE("power bound rejects oversized constants") {
  const VectorSet B = random_subset(5, 0.8, 6);
  const Direction x{1, 1, 1, 1, 1};
  const double kappa = 0.1;
  const double cap = max_power_constant(kappa);
  CHECK(cap == doctest::Approx(std::min(c1_estimate(kappa), kappa * (1 - kappa))));
  CHECK_THROWS_AS((void)power_product_bound_check(x, B, 0.5, 0.5, kappa, cap * 1.01), Error);
  CHECK_THROWS_AS((void)power_product_bound_check(x, B, 0.5, 0.5, kappa, 0.0), Error);
  CHECK(power_product_bound_check(x, B, 0.5, 0.5, kappa, cap * 0.99).holds());
}

TEST_CASE("convexity gap has the closed-form corner value") {
  // (1/2 + 1/2 * 1/4) - (3/4)^2 = 1/16
  CHECK(convexity_gap(0.5, 0.5, 1.0) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(convexity_gap(0.0, 0.3, 0.7) >= 0.0);
  CHECK_THROWS_AS((void)convexity_gap(0.6, 0.5, 0.5), Error);
  CHECK_THROWS_AS((void)convexity_gap(0.5, 0.0, 0.5), Error);
  CHECK_THROWS_AS((void)convexity_gap(0.5, 0.5, 1.5), Error);
}

TEST_CASE("power-constant estimate freezes its reference values") {
  CHECK(c1_estimate(0.05) == doctest::Approx(0.0090475187031415771).epsilon(1e-12));
  CHECK(c1_estimate(0.1) == doctest::Approx(0.016903698429928227).epsilon(1e-12));
  CHECK(c1_estimate(0.3) == doctest::Approx(0.037430582695492376).epsilon(1e-12));
  CHECK(kappa_assumption_margin(0.35) > 0.0);
  CHECK(kappa_assumption_margin(0.4) < 0.0);
  CHECK_THROWS_AS((void)c1_estimate(0.4), Error);
  CHECK_THROWS_AS((void)c1_estimate(0.0), Error);
}

TEST_CASE("sine gap rejects coinciding pair entries") {
  CHECK_THROWS_AS((void)sine_max_gap(0.3, 0.9, 2, 2), Error);
  const auto g = sine_max_gap(0.0, 0.6, 1, -1);
  CHECK(g.bound == doctest::Approx(std::fabs(std::sin(1.2)) / 2.0));
  CHECK(g.achieved >= g.bound - 1e-12);
}

TEST_CASE("spectral moments from convolution match hand values") {
  const std::vector<std::int64_t> d{5, 5, -3};
  // single index: E cos^2 = 1/2 regardless of the difference
  CHECK(spectral_moment_exact(d, {0}, 1) == Rational(1, 2));
  CHECK(spectral_moment_exact(d, {2}, 1) == Rational(1, 2));
  // equal pair: 8 of 16 signed tuples cancel, over the 2^2 normalizer
  CHECK(spectral_moment_exact(d, {0, 1}, 1) == Rational(2));
  CHECK_THROWS_AS((void)spectral_moment_exact(d, {3}, 1), Error);
  CHECK_THROWS_AS((void)spectral_moment_exact(d, {0}, 0), Error);
}

TEST_CASE("spectral tail estimates are monotone in the level") {
  const std::vector<std::int64_t> d{2, 4, 6, 8};
  const std::vector<int> G{0, 1, 2, 3};
  const double a = spectral_tail_estimate(d, G, 0.5, 256);
  const double b = spectral_tail_estimate(d, G, 1.5, 256);
  CHECK(a <= b);
  CHECK(spectral_tail_estimate(d, G, 5.0, 256) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)spectral_tail_estimate(d, G, 0.5, 16), Error);
}

TEST_CASE("single-angle sumset check is tight") {
  const std::vector<std::int64_t> d{2, 4, 6};
  const std::vector<int> G{0, 1, 2};
  const auto r = sumset_containment_check(d, G, {0.23});
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
  const auto r2 = sumset_containment_check(d, G, {0.11, 0.35});
  CHECK(r2.holds());
}
