#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "ipac/distribution.hpp"
#include "ipac/domain.hpp"

namespace ipac::oracles {

// Slow recomputations by the most literal method available. The fast paths
// are checked against these, so nothing here may share code with them.

// Per-member loop into a counting map.
IntegerDistribution inner_product_distribution(const Direction& x, const VectorSet& B);

// Full 2^n enumeration; n capped at 24.
IntegerDistribution cube_sum_distribution(const Direction& weights);

// Fresh histogram per direction; n capped at 20.
std::vector<CensusEntry> direction_census(const TwoCube& A, const VectorSet& B);

// Tuple recursion over ({±1} x [n])^len.
BigInt zero_sum_signed_tuples(const std::vector<std::int64_t>& d, int len);

// Quadruple loops: (pair count, sign-decorated count).
std::pair<BigInt, BigInt> sidon_counts(const std::vector<std::int64_t>& S);

// Prefix filtering by per-coordinate comparison.
Rational conditional_gamma(const VectorSet& B, std::uint64_t y, int j);

// E[exp(i eta <x_{>j}, Y_{>j}>) | Y_j = sign, Y_<j = y_<j]; 0 when the
// condition has no support.
std::complex<double> conditional_suffix_mean(const Direction& x, const VectorSet& B,
                                             std::uint64_t y, double eta, int j, int sign);

// Suffix filtering by per-coordinate comparison.
Rational suffix_mu(const TwoCubeSubset& A0, std::uint64_t picks, int j);

// Grid mean of (sum_{j in G} cos(4 pi theta d_j))^{2 ell}; exact for the
// trigonometric polynomial once grid exceeds its degree.
double moment_quadrature(const std::vector<std::int64_t>& d, const std::vector<int>& G, int ell,
                         std::int64_t grid);

}  // namespace ipac::oracles
