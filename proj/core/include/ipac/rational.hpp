#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "ipac/error.hpp"

namespace ipac {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

// log2 with ~double precision for integers of any width.
inline double log2_big(const BigInt& v) {
  if (v <= 0) fail(Errc::domain_error, "log2 of nonpositive integer");
  const auto bits = boost::multiprecision::msb(v);  // floor(log2 v)
  if (bits <= 62) return std::log2(v.convert_to<double>());
  BigInt top = v >> (bits - 62);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 62);
}

// Exact value of a decimal literal such as "0.375" or "-2.5e-3".
Rational rational_from_decimal(const std::string& text);

// Exact binary expansion of a finite double.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) fail(Errc::domain_error, "non-finite value has no rational form");
  return Rational(v);
}

// num/den >= threshold, decided exactly (threshold taken at its double value).
inline bool frac_ge(std::int64_t num, std::int64_t den, const Rational& threshold) {
  return Rational(num, den) >= threshold;
}

// Shortest round-trip decimal form, used everywhere a double is printed.
inline std::string render_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string rational_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace ipac
