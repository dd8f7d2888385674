#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ipac/distribution.hpp"
#include "ipac/domain.hpp"

namespace ipac {

// --- configuration ----------------------------------------------------------

struct ExperimentConfig {
  int n = 16;
  double beta = 0.6;
  double delta = 0.05;
  double C = 4.0;
  double lambda = 0.25;
  std::uint64_t seed = 1;
  std::int64_t theta_nodes = 0;  // 0 picks the automatic node count
  int ell_max = 8;
  int nu_grid_size = 64;
  std::uint64_t enumeration_budget = std::uint64_t{1} << 24;
  std::string output_format = "csv";  // "csv" or "json"
};

// --- deterministic randomness -----------------------------------------------

// splitmix64 of seed + index; derives independent per-instance seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// mt19937_64 behind fixed bounded-draw arithmetic, so streams are
// byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  std::uint64_t below(std::uint64_t bound);       // uniform in [0, bound)
  double unit();                                  // 53-bit uniform in [0,1)
  std::int64_t range(std::int64_t lo, std::int64_t hi);  // inclusive

 private:
  std::mt19937_64 gen_;
};

// --- instance generators ----------------------------------------------------

enum class GeneratorKind {
  random_b,
  sharpness_pair,
  hypercube,
  distinct_cube,
  sidon_cube,
  geometric_cube,
};

GeneratorKind parse_generator_kind(const std::string& name);
const char* generator_kind_name(GeneratorKind kind);

// ceil(2^{beta n}) members sampled without replacement by a seeded reservoir
// over the packed words 0..2^n-1.
VectorSet random_subset(int n, double beta, std::uint64_t seed);

// directions: head zero-sum, tail all +1; members: head all +1, tail
// zero-sum. Every direction hits every member with inner product 0.
struct SharpnessPair {
  VectorSet directions;
  VectorSet members;
};

// head length (1-beta)n and tail length beta n must both be even.
SharpnessPair sharpness_pair(int n, double beta);

// Greedy minimal sequence with all pairwise sums distinct: 1, 2, 4, 8, 13, ...
std::vector<std::int64_t> mian_chowla(int count);

TwoCube distinct_cube(int n);   // pairs (j, -j), differences 2j
TwoCube sidon_cube(int n);      // pairs (s_j, -s_j) over the greedy sequence
TwoCube geometric_cube(int n);  // pairs (2^j, -2^j)

// Dispatch for the cube-valued kinds; rejects the set-valued ones.
TwoCube make_cube(GeneratorKind kind, int n);

// --- concentration census experiment ----------------------------------------

struct SweepPoint {
  double c;               // threshold c / sqrt(n)
  std::uint64_t exceed;   // directions strictly above it
};

struct CensusExperimentReport {
  ExperimentConfig config;
  std::uint64_t set_size = 0;
  std::uint64_t total_directions = 0;
  Rational median, p95;  // order statistics at floor(q (N-1))
  std::vector<SweepPoint> sweep;
  double count_budget = 0.0;     // 2^{n(1-beta+delta)}
  double fraction_budget = 0.0;  // 2^{-delta n}
  CensusRecord record;           // per-direction entries for CSV output
};

// Full hypercube-direction census against a seeded random subset.
CensusExperimentReport census_experiment(const ExperimentConfig& config);

// Same census against a caller-supplied member set; config.n is overridden.
CensusExperimentReport census_experiment(const ExperimentConfig& config, const VectorSet& B);

std::string census_experiment_json(const CensusExperimentReport& report);

// --- concentration scaling experiment ----------------------------------------

struct ScalingPoint {
  int n;
  Rational concentration;  // every direction of a sign-symmetric cube ties
};

struct ScalingReport {
  GeneratorKind kind = GeneratorKind::hypercube;
  std::vector<ScalingPoint> points;
  double slope = 0.0;      // least squares on (log2 n, log2 concentration)
  double intercept = 0.0;
  double residual = 0.0;   // root mean squared fit residual
};

// Full-cube member set, concentration per n by coordinate convolution.
ScalingReport scaling_experiment(GeneratorKind kind, const std::vector<int>& ns,
                                 const DistributionLimits& limits = {});

std::string scaling_report_json(const ScalingReport& report);
std::string scaling_report_csv(const ScalingReport& report);

// --- verification suites ----------------------------------------------------

struct SuiteCheck {
  std::string check;
  std::uint64_t instance_seed = 0;
  double lhs = 0.0, rhs = 0.0;
  double margin() const { return rhs - lhs; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::vector<SuiteCheck> lines;
};

const std::vector<std::string>& suite_names();

// Runs one of: fourier-inequalities, encodings, structure-oracles,
// distribution-oracles, analytic-claims. UnknownSuite otherwise.
SuiteReport run_suite(const std::string& suite, const ExperimentConfig& config);

// One JSON object per line: {"check", "instance_seed", "lhs", "rhs", "margin"}.
std::string suite_jsonl(const SuiteReport& report);

}  // namespace ipac
