#include <benchmark/benchmark.h>

#include <cmath>

#include "ipac/distribution.hpp"
#include "ipac/encoding.hpp"
#include "ipac/fourier.hpp"
#include "ipac/harness.hpp"

namespace {

ipac::VectorSet bench_set(int n) { return ipac::random_subset(n, 0.6, 9); }

}  // namespace

static void BM_DirectionCensus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ipac::TwoCube A = ipac::hypercube(n);
  const ipac::VectorSet B = bench_set(n);
  const ipac::Rational threshold =
      ipac::rational_from_double(3.0 / std::sqrt(static_cast<double>(n)));
  ipac::CensusOptions options;
  options.workers = 1;
  for (auto _ : state) {
    auto record = ipac::direction_census(A, B, threshold, options);
    benchmark::DoNotOptimize(record.exceed_count);
  }
  state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_DirectionCensus)->DenseRange(10, 16, 2)->Complexity();

static void BM_CubeSumConvolution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ipac::Direction weights(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) weights[static_cast<std::size_t>(j)] = j + 1;
  for (auto _ : state) {
    auto dist = ipac::cube_sum_distribution(weights);
    benchmark::DoNotOptimize(dist.max_mass().first);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CubeSumConvolution)->RangeMultiplier(2)->Range(64, 256)->Complexity();

static void BM_PairProfiles(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ipac::VectorSet B = bench_set(n);
  const ipac::Direction x(static_cast<std::size_t>(n), 1);
  for (auto _ : state) {
    auto table = ipac::build_pair_profiles(B, x, 0.7);
    benchmark::DoNotOptimize(table.size);
  }
}
BENCHMARK(BM_PairProfiles)->DenseRange(10, 16, 2);

static void BM_EncodeMember(benchmark::State& state) {
  const ipac::VectorSet B = ipac::full_cube(static_cast<int>(state.range(0)));
  const ipac::Budget budget{1.0, 0.0, 0.3, 0.75};
  std::size_t m = 0;
  for (auto _ : state) {
    auto code = ipac::encode_member(B, B.members[m], budget);
    benchmark::DoNotOptimize(code.active_count);
    m = (m + 1) % B.size();
  }
}
BENCHMARK(BM_EncodeMember)->DenseRange(8, 12, 2);

BENCHMARK_MAIN();
