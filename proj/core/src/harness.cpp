#include "ipac/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "ipac/encoding.hpp"
#include "ipac/fourier.hpp"
#include "ipac/oracles.hpp"
#include "ipac/structure.hpp"

namespace ipac {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + 0x632be59bd9b4e019ULL * index);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) fail(Errc::domain_error, "empty draw range");
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next()) * bound) >> 64);
}

double Rng::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) fail(Errc::domain_error, "empty draw range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

// --- generators -------------------------------------------------------------

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "random_b") return GeneratorKind::random_b;
  if (name == "sharpness_pair") return GeneratorKind::sharpness_pair;
  if (name == "hypercube") return GeneratorKind::hypercube;
  if (name == "distinct_cube") return GeneratorKind::distinct_cube;
  if (name == "sidon_cube") return GeneratorKind::sidon_cube;
  if (name == "geometric_cube") return GeneratorKind::geometric_cube;
  fail(Errc::parse_error, "unknown generator kind '" + name + "'");
}

const char* generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::random_b: return "random_b";
    case GeneratorKind::sharpness_pair: return "sharpness_pair";
    case GeneratorKind::hypercube: return "hypercube";
    case GeneratorKind::distinct_cube: return "distinct_cube";
    case GeneratorKind::sidon_cube: return "sidon_cube";
    case GeneratorKind::geometric_cube: return "geometric_cube";
  }
  return "?";
}

namespace {

// Reservoir sample of `size` distinct words from [first, first + extent).
std::vector<std::uint64_t> reservoir(std::uint64_t first, std::uint64_t extent,
                                     std::uint64_t size, Rng& rng) {
  if (size > extent) fail(Errc::infeasible_spec, "sample larger than its range");
  std::vector<std::uint64_t> picks(size);
  for (std::uint64_t i = 0; i < size; ++i) picks[i] = first + i;
  for (std::uint64_t i = size; i < extent; ++i) {
    const std::uint64_t j = rng.below(i + 1);
    if (j < size) picks[j] = first + i;
  }
  std::sort(picks.begin(), picks.end());
  return picks;
}

}  // namespace

VectorSet random_subset(int n, double beta, std::uint64_t seed) {
  if (n < 1 || n > 26) fail(Errc::too_large, "dimension outside the sampling range");
  if (!(beta > 0.0 && beta <= 1.0)) fail(Errc::domain_error, "beta must lie in (0,1]");
  const auto extent = std::uint64_t{1} << n;
  const auto size = static_cast<std::uint64_t>(
      std::ceil(std::exp2(beta * static_cast<double>(n))));
  if (size < 1 || size > extent) fail(Errc::infeasible_spec, "2^{beta n} outside [1, 2^n]");
  Rng rng(seed);
  return make_vector_set_packed(n, reservoir(0, extent, size, rng));
}

SharpnessPair sharpness_pair(int n, double beta) {
  if (n < 4 || n > kMaxDimension) fail(Errc::invalid_dimension, "need 4 <= n <= 62");
  const auto tail = static_cast<int>(std::llround(beta * n));
  const int head = n - tail;
  if (tail < 2 || head < 2 || tail % 2 != 0 || head % 2 != 0)
    fail(Errc::infeasible_spec, "head " + std::to_string(head) + " and tail " +
                                    std::to_string(tail) + " must be even and at least 2");
  std::vector<std::uint64_t> members, directions;
  const auto head_ones = ((std::uint64_t{1} << head) - 1) << tail;
  const auto tail_ones = (std::uint64_t{1} << tail) - 1;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << tail); ++m)
    if (std::popcount(m) == tail / 2) members.push_back(head_ones | m);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << head); ++m)
    if (std::popcount(m) == head / 2) directions.push_back((m << tail) | tail_ones);
  return {make_vector_set_packed(n, std::move(directions)),
          make_vector_set_packed(n, std::move(members))};
}

std::vector<std::int64_t> mian_chowla(int count) {
  if (count < 1) fail(Errc::domain_error, "need a positive count");
  std::vector<std::int64_t> s;
  std::set<std::int64_t> sums;
  for (std::int64_t c = 1; static_cast<int>(s.size()) < count; ++c) {
    bool ok = !sums.contains(2 * c);
    for (auto v : s)
      if (sums.contains(v + c)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (auto v : s) sums.insert(v + c);
    sums.insert(2 * c);
    s.push_back(c);
  }
  return s;
}

TwoCube distinct_cube(int n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (int j = 1; j <= n; ++j) pairs.emplace_back(j, -j);
  return make_two_cube(std::move(pairs));
}

TwoCube sidon_cube(int n) {
  const auto s = mian_chowla(n);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (auto v : s) pairs.emplace_back(v, -v);
  return make_two_cube(std::move(pairs));
}

TwoCube geometric_cube(int n) {
  if (n > 40) fail(Errc::too_large, "2^n entries overflow the difference range");
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (int j = 0; j < n; ++j)
    pairs.emplace_back(std::int64_t{1} << j, -(std::int64_t{1} << j));
  return make_two_cube(std::move(pairs));
}

TwoCube make_cube(GeneratorKind kind, int n) {
  switch (kind) {
    case GeneratorKind::hypercube: return hypercube(n);
    case GeneratorKind::distinct_cube: return distinct_cube(n);
    case GeneratorKind::sidon_cube: return sidon_cube(n);
    case GeneratorKind::geometric_cube: return geometric_cube(n);
    default:
      fail(Errc::domain_error,
           std::string("generator '") + generator_kind_name(kind) + "' yields no two-cube");
  }
}

// --- census experiment ------------------------------------------------------

CensusExperimentReport census_experiment(const ExperimentConfig& config) {
  return census_experiment(config, random_subset(config.n, config.beta, config.seed));
}

CensusExperimentReport census_experiment(const ExperimentConfig& base, const VectorSet& B) {
  ExperimentConfig config = base;
  config.n = B.n;
  CensusExperimentReport report;
  report.config = config;
  report.set_size = B.size();
  const TwoCube A = hypercube(config.n);
  const double sqrt_n = std::sqrt(static_cast<double>(config.n));

  CensusOptions options;
  options.per_direction = true;
  options.budget = config.enumeration_budget;
  const Rational threshold = rational_from_double(3.0 / sqrt_n);
  report.record = direction_census(A, B, threshold, options);
  report.total_directions = report.record.total_directions;

  std::vector<Rational> values;
  values.reserve(report.record.per_direction.size());
  for (const auto& e : report.record.per_direction)
    values.emplace_back(e.concentration_num, e.concentration_den);
  std::sort(values.begin(), values.end());
  const auto rank = [&](double q) {
    return values[static_cast<std::size_t>(q * static_cast<double>(values.size() - 1))];
  };
  report.median = rank(0.5);
  report.p95 = rank(0.95);

  for (double c : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0}) {
    const Rational cut = rational_from_double(c / sqrt_n);
    std::uint64_t exceed = 0;
    for (const auto& v : values)
      if (v > cut) ++exceed;
    report.sweep.push_back({c, exceed});
  }
  report.count_budget =
      std::exp2(static_cast<double>(config.n) * (1.0 - config.beta + config.delta));
  report.fraction_budget = std::exp2(-config.delta * static_cast<double>(config.n));
  return report;
}

std::string census_experiment_json(const CensusExperimentReport& report) {
  const double sqrt_n = std::sqrt(static_cast<double>(report.config.n));
  std::ostringstream os;
  os << "{\"n\":" << report.config.n << ",\"beta\":" << render_double(report.config.beta)
     << ",\"delta\":" << render_double(report.config.delta)
     << ",\"seed\":" << report.config.seed << ",\"set_size\":" << report.set_size
     << ",\"total_directions\":" << report.total_directions;
  os << ",\"median\":{\"exact\":\"" << rational_string(report.median) << "\",\"value\":"
     << render_double(to_double(report.median)) << ",\"scaled_by_sqrt_n\":"
     << render_double(to_double(report.median) * sqrt_n) << "}";
  os << ",\"p95\":{\"exact\":\"" << rational_string(report.p95) << "\",\"value\":"
     << render_double(to_double(report.p95)) << ",\"scaled_by_sqrt_n\":"
     << render_double(to_double(report.p95) * sqrt_n) << "}";
  os << ",\"sweep\":[";
  for (std::size_t i = 0; i < report.sweep.size(); ++i) {
    const auto& p = report.sweep[i];
    os << (i ? "," : "") << "{\"c\":" << render_double(p.c) << ",\"exceed\":" << p.exceed
       << ",\"fraction\":"
       << render_double(static_cast<double>(p.exceed) /
                        static_cast<double>(report.total_directions))
       << "}";
  }
  os << "],\"count_budget\":" << render_double(report.count_budget)
     << ",\"fraction_budget\":" << render_double(report.fraction_budget) << "}";
  return os.str();
}

// --- scaling experiment -----------------------------------------------------

namespace {

struct LinearFit {
  double slope = 0.0, intercept = 0.0, residual = 0.0;
};

LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto m = static_cast<double>(xs.size());
  if (xs.size() < 2 || xs.size() != ys.size())
    fail(Errc::domain_error, "need at least two fit points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  LinearFit fit;
  const double det = m * sxx - sx * sx;
  if (det == 0.0) fail(Errc::domain_error, "degenerate fit abscissae");
  fit.slope = (m * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / m;
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    acc += r * r;
  }
  fit.residual = std::sqrt(acc / m);
  return fit;
}

}  // namespace

ScalingReport scaling_experiment(GeneratorKind kind, const std::vector<int>& ns,
                                 const DistributionLimits& limits) {
  ScalingReport report;
  report.kind = kind;
  std::vector<double> xs, ys;
  for (int n : ns) {
    const TwoCube cube = make_cube(kind, n);
    if (!cube.sign_symmetric())
      fail(Errc::domain_error, "scaling needs a sign-symmetric cube");
    Direction weights;
    weights.reserve(cube.pairs.size());
    for (const auto& [u, v] : cube.pairs) weights.push_back(u);
    const auto dist = cube_sum_distribution(weights, limits);
    const auto mass = dist.max_mass().first;
    report.points.push_back({n, mass});
    xs.push_back(std::log2(static_cast<double>(n)));
    ys.push_back(std::log2(to_double(mass)));
  }
  const auto fit = least_squares(xs, ys);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  report.residual = fit.residual;
  return report;
}

std::string scaling_report_json(const ScalingReport& report) {
  std::ostringstream os;
  os << "{\"kind\":\"" << generator_kind_name(report.kind) << "\",\"points\":[";
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& p = report.points[i];
    os << (i ? "," : "") << "{\"n\":" << p.n << ",\"exact\":\""
       << rational_string(p.concentration) << "\",\"value\":"
       << render_double(to_double(p.concentration)) << "}";
  }
  os << "],\"slope\":" << render_double(report.slope)
     << ",\"intercept\":" << render_double(report.intercept)
     << ",\"residual\":" << render_double(report.residual) << "}";
  return os.str();
}

std::string scaling_report_csv(const ScalingReport& report) {
  std::ostringstream os;
  os << "n,concentration_num,concentration_den,concentration\n";
  for (const auto& p : report.points)
    os << p.n << "," << boost::multiprecision::numerator(p.concentration).str() << ","
       << boost::multiprecision::denominator(p.concentration).str() << ","
       << render_double(to_double(p.concentration)) << "\n";
  os << "# kind=" << generator_kind_name(report.kind)
     << " slope=" << render_double(report.slope)
     << " intercept=" << render_double(report.intercept)
     << " residual=" << render_double(report.residual) << "\n";
  return os.str();
}

// --- verification suites ----------------------------------------------------

namespace {

constexpr double kTightSlack = 1e-12;
constexpr double kBoundSlack = 1e-9;

struct SuiteSink {
  SuiteReport report;

  void push(const std::string& check, std::uint64_t seed, double lhs, double rhs,
            double slack = kBoundSlack) {
    report.lines.push_back({check, seed, lhs, rhs});
    ++report.checks;
    if (rhs - lhs < -slack) ++report.violations;
  }
};

std::vector<std::uint64_t> sample_packed(int n, std::uint64_t size, Rng& rng) {
  return reservoir(0, std::uint64_t{1} << n, size, rng);
}

Direction random_direction(int n, Rng& rng, std::int64_t magnitude) {
  Direction x(static_cast<std::size_t>(n));
  for (auto& v : x) {
    const auto m = rng.range(1, magnitude);
    v = rng.below(2) ? m : -m;
  }
  return x;
}

Direction unpack_direction(std::uint64_t word, int n) {
  Direction x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = (word >> j) & 1u ? 1 : -1;
  return x;
}

void fourier_suite(SuiteSink& sink, const ExperimentConfig& config) {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto s = mix_seed(config.seed, i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(2, 10));
    const auto max_size = std::min<std::uint64_t>(std::uint64_t{1} << n, 128);
    const auto size = 1 + rng.below(max_size);
    const VectorSet B = make_vector_set_packed(n, sample_packed(n, size, rng));
    const Direction x = random_direction(n, rng, 3);
    const double eta = rng.unit() * std::numbers::pi;

    const auto conc = concentration_probability(x, B);
    const auto sb = star_bound(x, B, config.theta_nodes);
    sink.push("star_dominates_concentration", s, to_double(conc.value), sb.value);
    const auto pb = product_bound_check(x, B, eta);
    sink.push("product_bound", s, pb.lhs, pb.rhs);
  }

  const double kappa = 0.1;
  const double c0 = 0.9 * max_power_constant(kappa);
  const double nus[3] = {0.1, 0.5, 1.0};
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto s = mix_seed(config.seed, 0x100000 + i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(2, 8));
    const auto max_size = std::min<std::uint64_t>(std::uint64_t{1} << n, 64);
    const auto size = 1 + rng.below(max_size);
    const VectorSet B = make_vector_set_packed(n, sample_packed(n, size, rng));
    const Direction x = random_direction(n, rng, 1);
    const double eta = rng.unit() * std::numbers::pi;
    const double nu = nus[i % 3];
    const auto pb = power_product_bound_check(x, B, eta, nu, kappa, c0);
    sink.push("power_product_bound", s, pb.lhs, pb.rhs);
  }

  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto s = mix_seed(config.seed, 0x200000 + i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(2, 8));
    const auto max_size = std::min<std::uint64_t>(std::uint64_t{1} << n, 64);
    const auto size = 1 + rng.below(max_size);
    const VectorSet B = make_vector_set_packed(n, sample_packed(n, size, rng));
    const auto y = B.members[rng.below(B.size())];
    const auto picks_count = 1 + rng.below(std::min<std::uint64_t>(std::uint64_t{1} << n, 64));
    const TwoCubeSubset A0 =
        make_two_cube_subset(hypercube(n), sample_packed(n, picks_count, rng));
    const double eta = rng.unit() * std::numbers::pi;
    const double nu = nus[i % 3];
    const auto db = direction_average_bound_check(A0, B, y, eta, nu, kappa, c0);
    sink.push("direction_average_bound", s, db.lhs, db.rhs);
  }
}

void encodings_suite(SuiteSink& sink, const ExperimentConfig& config) {
  std::uint64_t member_trips = 0, direction_trips = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto s = mix_seed(config.seed, i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(8, 12));
    const auto half = std::uint64_t{1} << (n - 1);
    const auto bulk_max = std::min<std::uint64_t>(half, 253);
    const auto bulk_size = 65 + rng.below(bulk_max - 65 + 1);
    // Bulk in the halfspace with coordinate 0 = '+', outliers opposite; the
    // outliers branch off at coordinate 0 and so have tiny active sets.
    auto words = reservoir(half, half, bulk_size, rng);
    const auto outliers = reservoir(0, half, 3, rng);
    words.insert(words.end(), outliers.begin(), outliers.end());
    const VectorSet B = make_vector_set_packed(n, words);
    const Budget budget = make_budget(B, B.beta() / 6.0);

    std::uint64_t mismatches = 0, serial_bad = 0, chain_bad = 0;
    for (auto y : B.members) {
      const auto prod_check = [&] {
        Rational prod(1);
        const auto path = prefix_path(B, y);
        for (int j = 0; j < n; ++j) {
          const auto cm = static_cast<std::int64_t>(path.mid[j] - path.lo[j]);
          const auto cp = static_cast<std::int64_t>(path.hi[j] - path.mid[j]);
          prod *= Rational(sign_bit(y, n, j) ? cp : cm, cm + cp);
        }
        return prod == Rational(1, static_cast<std::int64_t>(B.size()));
      }();
      if (!prod_check) ++chain_bad;
      try {
        const auto code = encode_member(B, y, budget);
        ++member_trips;
        if (decode_member(B, code, budget) != y) ++mismatches;
        const auto round = parse_y_codeword(render_y_codeword(code));
        if (round.q != code.q || round.S != code.S ||
            round.active_count != code.active_count)
          ++serial_bad;
      } catch (const Error& e) {
        if (e.code() != Errc::hypothesis_failed) throw;
      }
    }
    sink.push("chain_rule_identity", s, static_cast<double>(chain_bad), 0.0);
    sink.push("member_round_trip", s, static_cast<double>(mismatches), 0.0);
    sink.push("member_serialization", s, static_cast<double>(serial_bad), 0.0);
    const auto yc = small_active_census(B, budget);
    sink.push("member_census_space", s, static_cast<double>(yc.count),
              to_double(yc.codeword_space));

    const double eta = rng.unit() * std::numbers::pi;
    const auto y0 = B.members[rng.below(B.size())];
    std::uint64_t x_mismatches = 0, x_serial_bad = 0;
    bool hypothesis_ok = true;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
      const Direction x = unpack_direction(w, n);
      try {
        const auto code = encode_direction(B, y0, x, eta, budget);
        ++direction_trips;
        if (decode_direction(B, y0, code, eta, budget) != x) ++x_mismatches;
        if (w == 0) {
          const auto round = parse_x_codeword(render_x_codeword(code));
          if (round.q != code.q || round.G != code.G || round.r != code.r ||
              round.off_count != code.off_count)
            ++x_serial_bad;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::hypothesis_failed) throw;
        if (std::string(e.what()).find("member codec") != std::string::npos) {
          hypothesis_ok = false;
          break;
        }
      }
    }
    if (hypothesis_ok) {
      sink.push("direction_round_trip", s, static_cast<double>(x_mismatches), 0.0);
      sink.push("direction_serialization", s, static_cast<double>(x_serial_bad), 0.0);
      const auto xc = direction_degree_census(B, y0, eta, budget);
      if (!xc.vacuous)
        sink.push("direction_census_space", s, static_cast<double>(xc.count),
                  to_double(xc.codeword_space));
    }
  }
  sink.push("member_coverage", config.seed, member_trips == 0 ? 1.0 : 0.0, 0.0);
  sink.push("direction_coverage", config.seed, direction_trips == 0 ? 1.0 : 0.0, 0.0);
}

void structure_suite(SuiteSink& sink, const ExperimentConfig& config) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto s = mix_seed(config.seed, i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(2, 8));
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (int j = 0; j < n; ++j) {
      std::int64_t u = rng.range(-20, 20), v = rng.range(-20, 20);
      while (v == u) v = rng.range(-20, 20);
      pairs.emplace_back(u, v);
    }
    const TwoCube cube = make_two_cube(std::move(pairs));
    const auto table = r_ell_table(cube, 3);
    for (int ell = 1; ell <= 3; ++ell) {
      BigInt diff = table[static_cast<std::size_t>(ell - 1)] -
                    oracles::zero_sum_signed_tuples(cube.differences, 2 * ell);
      if (diff < 0) diff = -diff;
      sink.push("zero_sum_count_oracle", s, to_double(diff), 0.0);
    }
  }

  for (std::uint64_t i = 0; i < 30; ++i) {
    const auto s = mix_seed(config.seed, 0x100000 + i);
    Rng rng(s);
    const int m = static_cast<int>(rng.range(1, 8));
    std::set<std::int64_t> vals;
    while (static_cast<int>(vals.size()) < m) vals.insert(rng.range(-50, 50));
    const std::vector<std::int64_t> S(vals.begin(), vals.end());
    const auto fast = sidon_classify(S);
    const auto [pairs, signs] = oracles::sidon_counts(S);
    BigInt diff = fast.pair_count - pairs;
    if (diff < 0) diff = -diff;
    BigInt diff2 = fast.signed_count - signs;
    if (diff2 < 0) diff2 = -diff2;
    const BigInt total_diff = diff + diff2;
    sink.push("sidon_counts_oracle", s, to_double(total_diff), 0.0);
  }

  for (std::uint64_t i = 0; i < 30; ++i) {
    const auto s = mix_seed(config.seed, 0x200000 + i);
    Rng rng(s);
    const int m = static_cast<int>(rng.range(1, 8));
    std::vector<std::int64_t> d(static_cast<std::size_t>(m));
    for (auto& v : d) {
      v = rng.range(-10, 10);
      if (v == 0) v = 7;
    }
    const int gsize = static_cast<int>(rng.range(1, std::min(m, 6)));
    std::set<int> gset;
    while (static_cast<int>(gset.size()) < gsize)
      gset.insert(static_cast<int>(rng.below(static_cast<std::uint64_t>(m))));
    const std::vector<int> G(gset.begin(), gset.end());
    const int ell = static_cast<int>(rng.range(1, 3));

    const auto exact = spectral_moment_exact(d, G, ell);
    const double quad = oracles::moment_quadrature(d, G, ell, 512);
    sink.push("moment_quadrature", s, std::fabs(to_double(exact) - quad), 1e-8,
              kTightSlack);
    std::vector<std::int64_t> dG;
    for (int g : G) dG.push_back(d[static_cast<std::size_t>(g)]);
    const auto brute = oracles::zero_sum_signed_tuples(dG, 2 * ell);
    const bool same = exact == Rational(brute, BigInt(1) << (2 * ell));
    sink.push("moment_zero_sum_count", s, same ? 0.0 : 1.0, 0.0);
  }

  for (double lambda : {0.1, 0.3, 0.5, 1.0}) {
    const auto p = solve_parameters(lambda);
    const double r1 =
        std::fabs(binary_entropy(1.0 / std::log2(1.0 / p.kappa)) - lambda);
    const double r2 = std::fabs(p.tau + binary_entropy(p.tau) - lambda);
    sink.push("entropy_solver_residual", config.seed, std::max(r1, r2), 1e-10,
              kTightSlack);
  }
  sink.push("entropy_endpoint_kappa", config.seed,
            std::fabs(solve_parameters(1.0).kappa - 0.25), 0.0, 0.0);
}

void distribution_suite(SuiteSink& sink, const ExperimentConfig& config) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto s = mix_seed(config.seed, i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(2, 10));
    const auto size = 1 + rng.below(std::min<std::uint64_t>(std::uint64_t{1} << n, 128));
    const VectorSet B = make_vector_set_packed(n, sample_packed(n, size, rng));
    Direction x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.range(-5, 5);
    const auto fast = inner_product_distribution(x, B);
    const auto slow = oracles::inner_product_distribution(x, B);
    const bool same = fast.support() == slow.support() && fast.mass() == slow.mass();
    sink.push("inner_product_oracle", s, same ? 0.0 : 1.0, 0.0);
    const auto conc = concentration_probability(x, B);
    const auto [m, arg] = slow.max_mass();
    sink.push("concentration_oracle", s,
              conc.value == m && conc.argmax == arg ? 0.0 : 1.0, 0.0);
  }

  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto s = mix_seed(config.seed, 0x100000 + i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(1, 12));
    Direction w(static_cast<std::size_t>(n));
    for (auto& v : w) v = rng.range(-6, 6);
    const auto fast = cube_sum_distribution(w);
    const auto slow = oracles::cube_sum_distribution(w);
    const bool same = fast.support() == slow.support() && fast.mass() == slow.mass();
    sink.push("cube_sum_oracle", s, same ? 0.0 : 1.0, 0.0);
  }

  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto s = mix_seed(config.seed, 0x200000 + i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(2, 8));
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (int j = 0; j < n; ++j) {
      std::int64_t u = rng.range(-9, 9), v = rng.range(-9, 9);
      while (v == u) v = rng.range(-9, 9);
      pairs.emplace_back(u, v);
    }
    const TwoCube A = make_two_cube(std::move(pairs));
    const auto size = 1 + rng.below(std::min<std::uint64_t>(std::uint64_t{1} << n, 64));
    const VectorSet B = make_vector_set_packed(n, sample_packed(n, size, rng));
    CensusOptions options;
    options.per_direction = true;
    const auto record = direction_census(A, B, Rational(1, 2), options);
    const auto slow = oracles::direction_census(A, B);
    std::uint64_t bad = 0;
    if (record.per_direction.size() != slow.size()) {
      bad = 1;
    } else {
      for (std::size_t k = 0; k < slow.size(); ++k) {
        const auto& a = record.per_direction[k];
        const auto& b = slow[k];
        if (a.direction_index != b.direction_index ||
            Rational(a.concentration_num, a.concentration_den) !=
                Rational(b.concentration_num, b.concentration_den) ||
            a.argmax_k != b.argmax_k)
          ++bad;
      }
    }
    sink.push("census_oracle", s, static_cast<double>(bad), 0.0);
  }

  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto s = mix_seed(config.seed, 0x300000 + i);
    Rng rng(s);
    const int n = static_cast<int>(rng.range(2, 8));
    const auto sa = 1 + rng.below(std::min<std::uint64_t>(std::uint64_t{1} << n, 32));
    const auto sb = 1 + rng.below(std::min<std::uint64_t>(std::uint64_t{1} << n, 32));
    const VectorSet A = make_vector_set_packed(n, sample_packed(n, sa, rng));
    const VectorSet B = make_vector_set_packed(n, sample_packed(n, sb, rng));
    const double c = rng.unit() * 2.0;
    const auto fast = interval_mass(A, B, c);
    BigInt hits = 0;
    for (auto xa : A.members)
      for (auto yb : B.members) {
        std::int64_t ip = 0;
        for (int j = 0; j < n; ++j) ip += sign_at(xa, n, j) * sign_at(yb, n, j);
        if (static_cast<double>(ip) * static_cast<double>(ip) <=
            c * c * static_cast<double>(n))
          ++hits;
      }
    const Rational slow(hits, BigInt(A.size()) * B.size());
    sink.push("interval_mass_oracle", s, fast == slow ? 0.0 : 1.0, 0.0);
  }
}

void analytic_suite(SuiteSink& sink, const ExperimentConfig& config) {
  const std::pair<std::int64_t, std::int64_t> uv[] = {
      {1, -1}, {3, 1}, {2, -2}, {5, -3}, {7, 1}};
  std::uint64_t pair_index = 0;
  for (const auto& [u, v] : uv) {
    double worst = 0.0;
    for (int a = 0; a < 200; ++a)
      for (int b = 1; b <= 100; ++b) {
        const double phi = std::numbers::pi * (static_cast<double>(a) / 200.0);
        const double eta = std::numbers::pi * (static_cast<double>(b) / 101.0);
        const auto gap = sine_max_gap(phi, eta, u, v);
        worst = std::max(worst, gap.bound - gap.achieved);
      }
    sink.push("sine_max_gap", pair_index++, worst, 0.0, kTightSlack);
  }

  {
    double worst = 0.0;
    for (int a = 0; a <= 45; ++a)
      for (int b = 1; b <= 45; ++b)
        for (int c = 0; c <= 48; ++c) {
          const double xi = 0.5 * static_cast<double>(a) / 45.0;
          const double p = static_cast<double>(b) / 46.0;
          const double nu = static_cast<double>(c) / 48.0;
          worst = std::max(worst, -convexity_gap(xi, p, nu));
        }
    sink.push("convexity_gap_nonnegative", 0, worst, 0.0, kTightSlack);
  }

  for (double kappa : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35}) {
    const double c1 = c1_estimate(kappa);
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double nu =
          1.0 / 1024.0 + (1.0 - 1.0 / 1024.0) * static_cast<double>(i) / 19999.0;
      worst = std::max(worst, c1 - convexity_gap(0.5, kappa, nu) / nu);
    }
    sink.push("power_constant_lower_bound",
              static_cast<std::uint64_t>(kappa * 100.0), worst, 0.0, 1e-6);
    sink.push("kappa_assumption_positive", static_cast<std::uint64_t>(kappa * 100.0),
              -kappa_assumption_margin(kappa), 0.0, kTightSlack);
  }

  const TwoCube cube = distinct_cube(8);
  for (std::uint64_t chunk = 0; chunk < 10; ++chunk) {
    const auto s = mix_seed(config.seed, 0x400000 + chunk);
    Rng rng(s);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const int m = static_cast<int>(rng.range(2, 4));
      std::vector<double> thetas(static_cast<std::size_t>(m));
      for (auto& t : thetas) t = rng.unit();
      std::vector<int> G;
      for (int j = 0; j < 8; ++j)
        if (rng.below(2)) G.push_back(j);
      if (G.empty()) G.push_back(static_cast<int>(rng.below(8)));
      const auto check = sumset_containment_check(cube.differences, G, thetas);
      worst = std::max(worst, check.lhs - check.rhs);
    }
    sink.push("sumset_containment", s, worst, 0.0);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "fourier-inequalities", "encodings", "structure-oracles", "distribution-oracles",
      "analytic-claims"};
  return names;
}

SuiteReport run_suite(const std::string& suite, const ExperimentConfig& config) {
  SuiteSink sink;
  sink.report.suite = suite;
  if (suite == "fourier-inequalities") fourier_suite(sink, config);
  else if (suite == "encodings") encodings_suite(sink, config);
  else if (suite == "structure-oracles") structure_suite(sink, config);
  else if (suite == "distribution-oracles") distribution_suite(sink, config);
  else if (suite == "analytic-claims") analytic_suite(sink, config);
  else fail(Errc::unknown_suite, "no suite named '" + suite + "'");
  return sink.report;
}

std::string suite_jsonl(const SuiteReport& report) {
  std::ostringstream os;
  for (const auto& line : report.lines)
    os << "{\"check\":\"" << line.check << "\",\"instance_seed\":" << line.instance_seed
       << ",\"lhs\":" << render_double(line.lhs) << ",\"rhs\":" << render_double(line.rhs)
       << ",\"margin\":" << render_double(line.margin()) << "}\n";
  return os.str();
}

}  // namespace ipac
