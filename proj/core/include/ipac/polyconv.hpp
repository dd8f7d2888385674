#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ipac/rational.hpp"

namespace ipac {

struct ConvLimits {
  std::int64_t max_extent = std::int64_t{1} << 26;  // largest |exponent| allowed
  std::size_t max_terms = std::size_t{1} << 22;     // largest term count allowed
};

// Sparse Laurent polynomial with integer coefficients, sorted by exponent.
using SparsePoly = std::vector<std::pair<std::int64_t, BigInt>>;

// sum_j (z^{d_j} + z^{-d_j}); duplicate magnitudes collapse into coefficients.
SparsePoly signed_base_poly(const std::vector<std::int64_t>& d);

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b, const ConvLimits& limits);
SparsePoly poly_pow(const SparsePoly& p, int power, const ConvLimits& limits);

BigInt constant_coefficient(const SparsePoly& p);

// Number of tuples (eps, j) in {±1}^len x [n]^len with sum eps_i d_{j_i} = 0,
// i.e. the constant coefficient of the base polynomial raised to len.
BigInt zero_sum_signed_tuples(const std::vector<std::int64_t>& d, int len,
                              const ConvLimits& limits = {});

}  // namespace ipac
