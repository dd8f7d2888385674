#include "ipac/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace ipac {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::zero_difference: return "ZeroDifference";
    case Errc::invalid_dimension: return "InvalidDimension";
    case Errc::bad_entry: return "BadEntry";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_in_set: return "NotInSet";
    case Errc::overflow_risk: return "OverflowRisk";
    case Errc::too_large: return "TooLarge";
    case Errc::grid_too_coarse: return "GridTooCoarse";
    case Errc::bad_constant: return "BadConstant";
    case Errc::domain_error: return "DomainError";
    case Errc::no_solution: return "NoSolution";
    case Errc::hypothesis_failed: return "HypothesisFailed";
    case Errc::degenerate_angle: return "DegenerateAngle";
    case Errc::undecodable: return "Undecodable";
    case Errc::infeasible_spec: return "InfeasibleSpec";
    case Errc::unknown_suite: return "UnknownSuite";
    case Errc::parse_error: return "ParseError";
  }
  return "Error";
}

Rational rational_from_decimal(const std::string& text) {
  // [sign] digits [. digits] [e exponent]
  std::size_t pos = 0;
  bool neg = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    neg = text[pos] == '-';
    ++pos;
  }
  BigInt mantissa = 0;
  long scale = 0;  // digits after the point
  bool any = false, dot = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (dot) ++scale;
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  long exp10 = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      eneg = text[pos] == '-';
      ++pos;
    }
    bool edig = false;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      exp10 = exp10 * 10 + (text[pos] - '0');
      edig = true;
    }
    if (!edig) fail(Errc::parse_error, "empty exponent in '" + text + "'");
    if (eneg) exp10 = -exp10;
  }
  if (!any || pos != text.size())
    fail(Errc::parse_error, "bad decimal literal '" + text + "'");
  Rational r(mantissa);
  long net = exp10 - scale;
  BigInt p10 = 1;
  for (long i = 0; i < std::labs(net); ++i) p10 *= 10;
  if (net >= 0) r *= Rational(p10);
  else r /= Rational(p10);
  if (neg) r = -r;
  return r;
}

std::uint64_t pack_signs(const std::vector<int>& signs) {
  const int n = static_cast<int>(signs.size());
  if (n < 1 || n > kMaxDimension)
    fail(Errc::invalid_dimension, "dimension " + std::to_string(n));
  std::uint64_t w = 0;
  for (int j = 0; j < n; ++j) {
    if (signs[j] != 1 && signs[j] != -1)
      fail(Errc::bad_entry, "entry " + std::to_string(signs[j]) + " at coordinate " +
                                std::to_string(j + 1),
           j + 1);
    if (signs[j] == 1) w |= std::uint64_t{1} << (n - 1 - j);
  }
  return w;
}

std::vector<int> unpack_signs(std::uint64_t word, int n) {
  std::vector<int> s(n);
  for (int j = 0; j < n; ++j) s[j] = sign_at(word, n, j);
  return s;
}

std::uint64_t parse_sign_string(const std::string& text, int n) {
  if (static_cast<int>(text.size()) != n)
    fail(Errc::dimension_mismatch,
         "sign string length " + std::to_string(text.size()) + ", expected " + std::to_string(n));
  std::uint64_t w = 0;
  for (int j = 0; j < n; ++j) {
    if (text[j] == '+') w |= std::uint64_t{1} << (n - 1 - j);
    else if (text[j] != '-')
      fail(Errc::bad_entry, std::string("character '") + text[j] + "' at coordinate " +
                                std::to_string(j + 1),
           j + 1);
  }
  return w;
}

std::string render_sign_string(std::uint64_t word, int n) {
  std::string s(n, '-');
  for (int j = 0; j < n; ++j)
    if (sign_bit(word, n, j)) s[j] = '+';
  return s;
}

bool TwoCube::sign_symmetric() const {
  for (const auto& [u, v] : pairs)
    if (v != -u) return false;
  return true;
}

Direction TwoCube::direction(std::uint64_t picks) const {
  Direction x(pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j)
    x[j] = (picks >> j) & 1u ? pairs[j].first : pairs[j].second;
  return x;
}

TwoCube make_two_cube(std::vector<std::pair<std::int64_t, std::int64_t>> pairs) {
  const int n = static_cast<int>(pairs.size());
  if (n < 1 || n > kMaxDimension)
    fail(Errc::invalid_dimension, "dimension " + std::to_string(n));
  TwoCube A;
  A.pairs = std::move(pairs);
  A.differences.resize(n);
  for (int j = 0; j < n; ++j) {
    A.differences[j] = A.pairs[j].first - A.pairs[j].second;
    if (A.differences[j] == 0)
      fail(Errc::zero_difference, "pair at coordinate " + std::to_string(j + 1), j + 1);
  }
  return A;
}

TwoCube hypercube(int n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs(n, {1, -1});
  return make_two_cube(std::move(pairs));
}

double VectorSet::beta() const { return log2_size() / n; }
double VectorSet::log2_size() const { return std::log2(static_cast<double>(members.size())); }

bool VectorSet::contains(std::uint64_t word) const {
  return std::binary_search(members.begin(), members.end(), word);
}

std::size_t VectorSet::index_of(std::uint64_t word) const {
  auto it = std::lower_bound(members.begin(), members.end(), word);
  if (it == members.end() || *it != word)
    fail(Errc::not_in_set, "vector " + render_sign_string(word, n));
  return static_cast<std::size_t>(it - members.begin());
}

VectorSet make_vector_set_packed(int n, std::vector<std::uint64_t> words) {
  if (n < 1 || n > kMaxDimension)
    fail(Errc::invalid_dimension, "dimension " + std::to_string(n));
  if (words.empty()) fail(Errc::bad_entry, "empty vector set");
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  if (n < kMaxDimension && words.back() >= (std::uint64_t{1} << n))
    fail(Errc::bad_entry, "packed vector exceeds dimension");
  VectorSet B;
  B.n = n;
  B.members = std::move(words);
  return B;
}

VectorSet make_vector_set(int n, const std::vector<std::vector<int>>& vectors) {
  std::vector<std::uint64_t> words;
  words.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != n)
      fail(Errc::dimension_mismatch,
           "vector length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
    words.push_back(pack_signs(v));
  }
  return make_vector_set_packed(n, std::move(words));
}

VectorSet full_cube(int n, std::uint64_t budget) {
  if (n < 1 || n > kMaxDimension)
    fail(Errc::invalid_dimension, "dimension " + std::to_string(n));
  if (n >= 63 || (std::uint64_t{1} << n) > budget)
    fail(Errc::too_large, "full cube of dimension " + std::to_string(n) +
                              " exceeds enumeration budget " + std::to_string(budget));
  VectorSet B;
  B.n = n;
  B.members.resize(std::size_t{1} << n);
  for (std::uint64_t w = 0; w < B.members.size(); ++w) B.members[w] = w;
  return B;
}

TwoCubeSubset make_two_cube_subset(TwoCube cube, std::vector<std::uint64_t> picks) {
  if (picks.empty()) fail(Errc::bad_entry, "empty two-cube subset");
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  if (cube.n() < kMaxDimension && picks.back() >= (std::uint64_t{1} << cube.n()))
    fail(Errc::bad_entry, "pick word exceeds dimension");
  return TwoCubeSubset{std::move(cube), std::move(picks)};
}

TwoCubeSubset full_two_cube(TwoCube cube, std::uint64_t budget) {
  const int n = cube.n();
  if (n >= 63 || (std::uint64_t{1} << n) > budget)
    fail(Errc::too_large, "full two-cube of dimension " + std::to_string(n) +
                              " exceeds enumeration budget " + std::to_string(budget));
  std::vector<std::uint64_t> picks(std::size_t{1} << n);
  for (std::uint64_t w = 0; w < picks.size(); ++w) picks[w] = w;
  return TwoCubeSubset{std::move(cube), std::move(picks)};
}

IntegerDistribution IntegerDistribution::from_counts(
    const std::map<std::int64_t, BigInt>& counts, const BigInt& total) {
  if (total <= 0) fail(Errc::bad_entry, "nonpositive total count");
  IntegerDistribution d;
  BigInt sum = 0;
  for (const auto& [k, c] : counts) {
    if (c < 0) fail(Errc::bad_entry, "negative count");
    if (c == 0) continue;
    d.support_.push_back(k);
    d.mass_.push_back(Rational(c, total));
    sum += c;
  }
  if (sum != total) fail(Errc::bad_entry, "counts do not sum to the stated total");
  return d;
}

Rational IntegerDistribution::mass_at(std::int64_t k) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), k);
  if (it == support_.end() || *it != k) return Rational(0);
  return mass_[static_cast<std::size_t>(it - support_.begin())];
}

Rational IntegerDistribution::mass_in(std::int64_t lo, std::int64_t hi) const {
  Rational total(0);
  auto it = std::lower_bound(support_.begin(), support_.end(), lo);
  for (auto i = static_cast<std::size_t>(it - support_.begin());
       i < support_.size() && support_[i] <= hi; ++i)
    total += mass_[i];
  return total;
}

std::pair<Rational, std::int64_t> IntegerDistribution::max_mass() const {
  if (support_.empty()) fail(Errc::bad_entry, "empty distribution");
  std::size_t best = 0;
  for (std::size_t i = 1; i < mass_.size(); ++i)
    if (mass_[i] > mass_[best]) best = i;  // first occurrence wins ties
  return {mass_[best], support_[best]};
}

namespace {

// Shared line scanner: strips comments, yields trimmed nonempty lines.
std::vector<std::pair<int, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<int, std::string>> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r\n");
    out.emplace_back(no, line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

VectorSet parse_vector_set(std::istream& in) {
  auto lines = content_lines(in);
  if (lines.empty()) fail(Errc::parse_error, "no vectors in input");
  const int n = static_cast<int>(lines.front().second.size());
  if (n < 1 || n > kMaxDimension)
    fail(Errc::invalid_dimension,
         "vector length " + std::to_string(n) + " at line " + std::to_string(lines.front().first));
  std::vector<std::uint64_t> words;
  words.reserve(lines.size());
  for (const auto& [no, text] : lines) {
    if (static_cast<int>(text.size()) != n)
      fail(Errc::parse_error, "line " + std::to_string(no) + ": length " +
                                  std::to_string(text.size()) + " != " + std::to_string(n));
    try {
      words.push_back(parse_sign_string(text, n));
    } catch (const Error& e) {
      fail(Errc::parse_error, "line " + std::to_string(no) + ": " + e.what());
    }
  }
  return make_vector_set_packed(n, std::move(words));
}

VectorSet parse_vector_set_text(const std::string& text) {
  std::istringstream in(text);
  return parse_vector_set(in);
}

std::string render_vector_set(const VectorSet& B) {
  std::string out;
  out.reserve(B.size() * (B.n + 1));
  for (auto w : B.members) {
    out += render_sign_string(w, B.n);
    out += '\n';
  }
  return out;
}

TwoCube parse_two_cube(std::istream& in) {
  auto lines = content_lines(in);
  if (lines.empty()) fail(Errc::parse_error, "no pairs in input");
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  pairs.reserve(lines.size());
  for (const auto& [no, text] : lines) {
    std::istringstream ls(text);
    std::int64_t u, v;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra))
      fail(Errc::parse_error, "line " + std::to_string(no) + ": expected 'u v'");
    pairs.emplace_back(u, v);
  }
  try {
    return make_two_cube(std::move(pairs));
  } catch (const Error& e) {
    fail(Errc::parse_error, e.what(), e.index());
  }
}

TwoCube parse_two_cube_text(const std::string& text) {
  std::istringstream in(text);
  return parse_two_cube(in);
}

std::string render_two_cube(const TwoCube& A) {
  std::string out;
  for (const auto& [u, v] : A.pairs)
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

VectorSet load_vector_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
  return parse_vector_set(in);
}

TwoCube load_two_cube(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
  return parse_two_cube(in);
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(Errc::parse_error, "cannot open '" + path + "' for writing");
  out << text;
}

}  // namespace ipac
