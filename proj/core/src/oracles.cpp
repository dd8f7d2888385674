#include "ipac/oracles.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace ipac::oracles {

namespace {

std::int64_t dot(const Direction& x, std::uint64_t y, int n) {
  std::int64_t acc = 0;
  for (int j = 0; j < n; ++j) acc += x[j] * sign_at(y, n, j);
  return acc;
}

bool prefix_matches(std::uint64_t w, std::uint64_t y, int n, int j) {
  for (int i = 0; i < j; ++i)
    if (sign_at(w, n, i) != sign_at(y, n, i)) return false;
  return true;
}

}  // namespace

IntegerDistribution inner_product_distribution(const Direction& x, const VectorSet& B) {
  if (static_cast<int>(x.size()) != B.n) fail(Errc::dimension_mismatch, "direction length");
  std::map<std::int64_t, BigInt> counts;
  for (auto y : B.members) counts[dot(x, y, B.n)] += 1;
  return IntegerDistribution::from_counts(counts, BigInt(B.size()));
}

IntegerDistribution cube_sum_distribution(const Direction& weights) {
  const int n = static_cast<int>(weights.size());
  if (n > 24) fail(Errc::too_large, "2^" + std::to_string(n) + " sign patterns");
  std::map<std::int64_t, BigInt> counts;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t sum = 0;
    for (int j = 0; j < n; ++j) sum += (mask >> j) & 1u ? weights[j] : -weights[j];
    counts[sum] += 1;
  }
  return IntegerDistribution::from_counts(counts, BigInt(1) << n);
}

std::vector<CensusEntry> direction_census(const TwoCube& A, const VectorSet& B) {
  const int n = A.n();
  if (n != B.n) fail(Errc::dimension_mismatch, "two-cube vs set dimension");
  if (n > 20) fail(Errc::too_large, "2^" + std::to_string(n) + " directions");
  std::vector<CensusEntry> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << n); ++pick) {
    const Direction x = A.direction(pick);
    std::map<std::int64_t, std::int64_t> hist;
    for (auto y : B.members) hist[dot(x, y, n)] += 1;
    std::int64_t best = 0, arg = 0;
    for (const auto& [k, c] : hist)
      if (c > best) {
        best = c;
        arg = k;
      }
    out.push_back({pick, best, static_cast<std::int64_t>(B.size()), arg});
  }
  return out;
}

BigInt zero_sum_signed_tuples(const std::vector<std::int64_t>& d, int len) {
  const auto n = static_cast<int>(d.size());
  if (len * std::log2(2.0 * n) > 34.0) fail(Errc::too_large, "tuple space too large");
  BigInt count = 0;
  auto rec = [&](auto&& self, int depth, std::int64_t sum) -> void {
    if (depth == len) {
      if (sum == 0) ++count;
      return;
    }
    for (int j = 0; j < n; ++j) {
      self(self, depth + 1, sum + d[j]);
      self(self, depth + 1, sum - d[j]);
    }
  };
  rec(rec, 0, 0);
  return count;
}

std::pair<BigInt, BigInt> sidon_counts(const std::vector<std::int64_t>& S) {
  const auto n = S.size();
  BigInt pair_count = 0, signed_count = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          if (S[a] + S[b] == S[c] + S[e]) ++pair_count;
          for (int sa = -1; sa <= 1; sa += 2)
            for (int sb = -1; sb <= 1; sb += 2)
              for (int sc = -1; sc <= 1; sc += 2)
                for (int se = -1; se <= 1; se += 2)
                  if (sa * S[a] + sb * S[b] == sc * S[c] + se * S[e]) ++signed_count;
        }
  return {pair_count, signed_count};
}

Rational conditional_gamma(const VectorSet& B, std::uint64_t y, int j) {
  std::int64_t plus = 0, minus = 0;
  for (auto w : B.members) {
    if (!prefix_matches(w, y, B.n, j)) continue;
    if (sign_at(w, B.n, j) > 0) ++plus;
    else ++minus;
  }
  if (plus + minus == 0) fail(Errc::not_in_set, "no member matches the prefix");
  return Rational(std::min(plus, minus), plus + minus);
}

std::complex<double> conditional_suffix_mean(const Direction& x, const VectorSet& B,
                                             std::uint64_t y, double eta, int j, int sign) {
  std::complex<double> acc{0.0, 0.0};
  std::int64_t hits = 0;
  for (auto w : B.members) {
    if (!prefix_matches(w, y, B.n, j)) continue;
    if (sign_at(w, B.n, j) != sign) continue;
    double phase = 0.0;
    for (int i = j + 1; i < B.n; ++i)
      phase += eta * static_cast<double>(x[i]) * static_cast<double>(sign_at(w, B.n, i));
    acc += std::complex<double>{std::cos(phase), std::sin(phase)};
    ++hits;
  }
  if (hits == 0) return {0.0, 0.0};
  return acc / static_cast<double>(hits);
}

Rational suffix_mu(const TwoCubeSubset& A0, std::uint64_t picks, int j) {
  const int n = A0.n();
  std::int64_t upper = 0, lower = 0;
  for (auto p : A0.picks) {
    bool match = true;
    for (int i = j + 1; i < n && match; ++i)
      if (((p >> i) & 1u) != ((picks >> i) & 1u)) match = false;
    if (!match) continue;
    if ((p >> j) & 1u) ++upper;
    else ++lower;
  }
  if (upper + lower == 0) fail(Errc::not_in_set, "no member matches the suffix");
  return Rational(std::min(upper, lower), upper + lower);
}

double moment_quadrature(const std::vector<std::int64_t>& d, const std::vector<int>& G, int ell,
                         std::int64_t grid) {
  if (grid < 1) fail(Errc::grid_too_coarse, "empty quadrature grid");
  const double four_pi = 4.0 * std::numbers::pi;
  double acc = 0.0;
  for (std::int64_t t = 0; t < grid; ++t) {
    const double theta = static_cast<double>(t) / static_cast<double>(grid);
    double s = 0.0;
    for (int g : G) s += std::cos(four_pi * theta * static_cast<double>(d[g]));
    acc += std::pow(s, 2 * ell);
  }
  return acc / static_cast<double>(grid);
}

}  // namespace ipac::oracles
