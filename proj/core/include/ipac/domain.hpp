#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ipac/rational.hpp"

namespace ipac {

// Hard cap on ambient dimension for packed sign vectors.
inline constexpr int kMaxDimension = 62;

// Integer direction vector; entry j is the value x_j.
using Direction = std::vector<std::int64_t>;

// --- sign-vector packing ---------------------------------------------------
// Coordinate j (0-based) lives at bit (n-1-j); a set bit means +1. Sorting
// packed words ascending therefore sorts vectors lexicographically with
// coordinate 0 most significant and '-' ordered before '+'.

inline int sign_bit(std::uint64_t word, int n, int j) {
  return static_cast<int>((word >> (n - 1 - j)) & 1u);
}
inline int sign_at(std::uint64_t word, int n, int j) {
  return sign_bit(word, n, j) ? +1 : -1;
}

std::uint64_t pack_signs(const std::vector<int>& signs);
std::vector<int> unpack_signs(std::uint64_t word, int n);

// "+-+" <-> packed word
std::uint64_t parse_sign_string(const std::string& text, int n);
std::string render_sign_string(std::uint64_t word, int n);

// --- two-cube --------------------------------------------------------------

// Product set A = A_1 x ... x A_n with A_j = {u_j, v_j}, u_j != v_j.
struct TwoCube {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (u_j, v_j)
  std::vector<std::int64_t> differences;                     // d_j = u_j - v_j

  int n() const { return static_cast<int>(pairs.size()); }
  bool sign_symmetric() const;  // v_j == -u_j for every j

  // picks bit j (LSB order) set -> x_j = u_j, else v_j
  Direction direction(std::uint64_t picks) const;
};

TwoCube make_two_cube(std::vector<std::pair<std::int64_t, std::int64_t>> pairs);
TwoCube hypercube(int n);  // A_j = {+1, -1}

// --- vector set ------------------------------------------------------------

// Nonempty subset of {-1,+1}^n, deduplicated, stored sorted.
struct VectorSet {
  int n = 0;
  std::vector<std::uint64_t> members;  // packed, ascending, unique

  std::size_t size() const { return members.size(); }
  int sign(std::size_t m, int j) const { return sign_at(members[m], n, j); }
  double beta() const;       // log2(size)/n
  double log2_size() const;  // log2(size)
  bool contains(std::uint64_t word) const;
  std::size_t index_of(std::uint64_t word) const;  // not_in_set if absent
};

VectorSet make_vector_set(int n, const std::vector<std::vector<int>>& vectors);
VectorSet make_vector_set_packed(int n, std::vector<std::uint64_t> words);
VectorSet full_cube(int n, std::uint64_t budget = std::uint64_t{1} << 24);

// Subset of a two-cube; picks follow TwoCube::direction's convention.
struct TwoCubeSubset {
  TwoCube cube;
  std::vector<std::uint64_t> picks;  // ascending, unique

  std::size_t size() const { return picks.size(); }
  int n() const { return cube.n(); }
  // chosen entry of member m at coordinate j
  std::int64_t entry(std::size_t m, int j) const {
    return (picks[m] >> j) & 1u ? cube.pairs[j].first : cube.pairs[j].second;
  }
};

TwoCubeSubset make_two_cube_subset(TwoCube cube, std::vector<std::uint64_t> picks);
TwoCubeSubset full_two_cube(TwoCube cube, std::uint64_t budget = std::uint64_t{1} << 24);

// --- exact distribution on the integers ------------------------------------

class IntegerDistribution {
 public:
  IntegerDistribution() = default;

  static IntegerDistribution from_counts(const std::map<std::int64_t, BigInt>& counts,
                                         const BigInt& total);

  const std::vector<std::int64_t>& support() const { return support_; }
  const std::vector<Rational>& mass() const { return mass_; }
  std::size_t size() const { return support_.size(); }

  Rational mass_at(std::int64_t k) const;
  Rational mass_in(std::int64_t lo, std::int64_t hi) const;  // closed interval

  // Largest point mass; ties resolved toward the smallest point.
  std::pair<Rational, std::int64_t> max_mass() const;

 private:
  std::vector<std::int64_t> support_;  // ascending
  std::vector<Rational> mass_;         // positive, sums to exactly 1
};

// --- file formats ----------------------------------------------------------
// Vector-set files: one vector per line as '+'/'-' characters.
// Two-cube files: one "u v" pair per line.
// Both are UTF-8 with '#' starting a comment line; blank lines are ignored.

VectorSet parse_vector_set(std::istream& in);
VectorSet parse_vector_set_text(const std::string& text);
std::string render_vector_set(const VectorSet& B);

TwoCube parse_two_cube(std::istream& in);
TwoCube parse_two_cube_text(const std::string& text);
std::string render_two_cube(const TwoCube& A);

VectorSet load_vector_set(const std::string& path);
TwoCube load_two_cube(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace ipac
