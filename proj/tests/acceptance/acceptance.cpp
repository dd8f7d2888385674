#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ipac/distribution.hpp"
#include "ipac/domain.hpp"
#include "ipac/harness.hpp"
#include "ipac/structure.hpp"

using namespace ipac;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int line_index = 0;
int failures = 0;

void criterion(const std::string& label, double time_limit, const std::function<Outcome()>& body) {
  ++line_index;
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("threw: ") + e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed >= time_limit) {
    out.pass = false;
    out.detail += " [over the " + std::to_string(time_limit) + " s limit]";
  }
  std::printf("[%2d/11] %s  %-38s %s (%.2f s)\n", line_index, out.pass ? "PASS" : "FAIL",
              label.c_str(), out.detail.c_str(), elapsed);
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

BigInt binomial(int n, int k) {
  BigInt v = 1;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

std::uint64_t count_checks(const SuiteReport& report, const std::vector<std::string>& names) {
  std::uint64_t count = 0;
  for (const auto& line : report.lines)
    if (std::find(names.begin(), names.end(), line.check) != names.end()) ++count;
  return count;
}

Outcome suite_outcome(const SuiteReport& report, const std::vector<std::string>& names,
                      std::uint64_t expected) {
  const auto subset = count_checks(report, names);
  std::ostringstream os;
  os << subset << " checks, " << report.violations << " suite violations";
  return {report.violations == 0 && subset == expected, os.str()};
}

}  // namespace

int main() {
  std::printf("acceptance: exact anti-concentration library\n");

  criterion("central coefficient baseline", 10.0, [] {
    for (int n = 1; n <= 16; ++n) {
      const Direction ones(static_cast<std::size_t>(n), 1);
      const auto conc = concentration_probability(ones, full_cube(n));
      const Rational expected(binomial(n, (n + 1) / 2), BigInt(1) << n);
      if (conc.value != expected) return Outcome{false, "all-ones mismatch at n=" + std::to_string(n)};
    }
    Rng rng(2026);
    const VectorSet cube16 = full_cube(16);
    const Rational expected16(binomial(16, 8), BigInt(1) << 16);
    for (int t = 0; t < 20; ++t) {
      Direction x(16);
      for (auto& v : x) v = rng.below(2) ? 1 : -1;
      if (concentration_probability(x, cube16).value != expected16)
        return Outcome{false, "random direction mismatch at n=16"};
    }
    return Outcome{true, "16 dimensions, 20 extra directions, exact"};
  });

  criterion("zero-fiber sharpness pair", 5.0, [] {
    const auto pair = sharpness_pair(12, 0.5);
    for (std::size_t i = 0; i < pair.directions.size(); ++i) {
      Direction x(12);
      for (int j = 0; j < 12; ++j) x[static_cast<std::size_t>(j)] = pair.directions.sign(i, j);
      const auto conc = concentration_probability(x, pair.members);
      if (conc.value != Rational(1) || conc.argmax != 0)
        return Outcome{false, "direction " + std::to_string(i) + " not concentrated at 0"};
    }
    std::ostringstream os;
    os << pair.directions.size() << " directions x " << pair.members.size()
       << " members, concentration 1";
    return Outcome{true, os.str()};
  });

  criterion("distinct-difference decay exponent", 120.0, [] {
    const std::vector<int> ns{8, 10, 12, 14, 16, 18, 20, 22, 24};
    const auto report = scaling_experiment(GeneratorKind::distinct_cube, ns);
    std::ostringstream os;
    os << "slope " << report.slope << " over " << ns.size() << " sizes";
    return Outcome{report.slope > -1.7 && report.slope < -1.3, os.str()};
  });

  ExperimentConfig config;

  criterion("mean-modulus and product bounds", 120.0, [&config] {
    const auto report = run_suite("fourier-inequalities", config);
    return suite_outcome(report, {"star_dominates_concentration", "product_bound"}, 20000);
  });

  criterion("power and direction-average bounds", 300.0, [&config] {
    const auto report = run_suite("fourier-inequalities", config);
    return suite_outcome(report, {"power_product_bound", "direction_average_bound"}, 2000);
  });

  criterion("spectral moment identities", 60.0, [&config] {
    const auto report = run_suite("structure-oracles", config);
    return suite_outcome(report, {"moment_quadrature", "moment_zero_sum_count"}, 60);
  });

  criterion("zero-sum tuple oracle", 120.0, [&config] {
    const auto report = run_suite("structure-oracles", config);
    return suite_outcome(report, {"zero_sum_count_oracle"}, 300);
  });

  criterion("codec round trips and census bounds", 300.0, [&config] {
    const auto report = run_suite("encodings", config);
    std::ostringstream os;
    os << report.checks << " checks, " << report.violations << " violations";
    return Outcome{report.violations == 0 && report.checks > 0, os.str()};
  });

  criterion("analytic claim grids", 60.0, [&config] {
    const auto report = run_suite("analytic-claims", config);
    std::ostringstream os;
    os << report.checks << " checks, " << report.violations << " violations";
    return Outcome{report.violations == 0 && report.checks > 0, os.str()};
  });

  criterion("entropy parameter solver", 1.0, [] {
    double worst = 0.0;
    for (double lambda : {0.1, 0.3, 0.5, 1.0}) {
      const auto p = solve_parameters(lambda);
      const double r1 = std::fabs(binary_entropy(1.0 / std::log2(1.0 / p.kappa)) - lambda);
      const double r2 = std::fabs(p.tau + binary_entropy(p.tau) - lambda);
      worst = std::max({worst, r1, r2});
    }
    if (solve_parameters(1.0).kappa != 0.25)
      return Outcome{false, "endpoint kappa drifted from 1/4"};
    std::ostringstream os;
    os << "max residual " << worst << ", endpoint exact";
    return Outcome{worst < 1e-10, os.str()};
  });

  criterion("seed-stable census band", 600.0, [] {
    double lo = 1e300, hi = 0.0;
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      ExperimentConfig cfg;
      cfg.n = 16;
      cfg.beta = 0.6;
      cfg.delta = 0.05;
      cfg.seed = seed;
      const auto report = census_experiment(cfg);
      const double scaled = to_double(report.p95) * 4.0;
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
      const double fraction = static_cast<double>(report.sweep[5].exceed) /
                              static_cast<double>(report.total_directions);
      if (fraction < std::exp2(-0.05 * 16.0)) ++good;
    }
    std::ostringstream os;
    os << "p95*sqrt(n) ratio " << hi / lo << ", " << good << "/10 seeds under budget";
    return Outcome{hi / lo < 3.0 && good >= 9, os.str()};
  });

  if (failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 11 criteria FAILED\n", failures);
  return 1;
}
