#include "ipac/polyconv.hpp"

#include <cstdlib>
#include <map>
#include <string>

namespace ipac {

SparsePoly signed_base_poly(const std::vector<std::int64_t>& d) {
  std::map<std::int64_t, BigInt> terms;
  for (auto v : d) {
    if (v == 0) fail(Errc::zero_difference, "zero term in difference list");
    const std::int64_t a = std::llabs(v);
    terms[a] += 1;
    terms[-a] += 1;
  }
  return SparsePoly(terms.begin(), terms.end());
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b, const ConvLimits& limits) {
  std::map<std::int64_t, BigInt> acc;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      const std::int64_t e = ea + eb;
      if (std::llabs(e) > limits.max_extent)
        fail(Errc::overflow_risk, "convolution exponent " + std::to_string(e));
      acc[e] += ca * cb;
      if (acc.size() > limits.max_terms)
        fail(Errc::overflow_risk, "convolution exceeds " + std::to_string(limits.max_terms) +
                                      " terms");
    }
  return SparsePoly(acc.begin(), acc.end());
}

SparsePoly poly_pow(const SparsePoly& p, int power, const ConvLimits& limits) {
  if (power < 0) fail(Errc::domain_error, "negative polynomial power");
  SparsePoly result{{0, BigInt(1)}};
  SparsePoly base = p;
  int e = power;
  while (e > 0) {
    if (e & 1) result = poly_mul(result, base, limits);
    e >>= 1;
    if (e > 0) base = poly_mul(base, base, limits);
  }
  return result;
}

BigInt constant_coefficient(const SparsePoly& p) {
  for (const auto& [e, c] : p)
    if (e == 0) return c;
  return BigInt(0);
}

BigInt zero_sum_signed_tuples(const std::vector<std::int64_t>& d, int len,
                              const ConvLimits& limits) {
  if (d.empty()) fail(Errc::invalid_dimension, "empty difference list");
  if (len == 0) return BigInt(1);
  return constant_coefficient(poly_pow(signed_base_poly(d), len, limits));
}

}  // namespace ipac
