#include "ipac/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ipac/structure.hpp"

namespace ipac {

namespace {

double sin_sq(double t) {
  const double s = std::sin(t);
  return s * s;
}

int floor_int(double v) { return static_cast<int>(std::floor(v)); }

void check_direction_entries(const Direction& x, int n) {
  if (static_cast<int>(x.size()) != n)
    fail(Errc::dimension_mismatch, "direction length " + std::to_string(x.size()) +
                                       " vs set dimension " + std::to_string(n));
  for (int j = 0; j < n; ++j)
    if (x[j] != 1 && x[j] != -1)
      fail(Errc::bad_entry, "direction entry must be +1 or -1", j + 1);
}

BigInt binomial_sum(int n, int k) {
  // sum_{i<=k} C(n,i)
  BigInt acc = 0, term = 1;
  for (int i = 0; i <= std::min(k, n); ++i) {
    acc += term;
    term = term * (n - i) / (i + 1);
  }
  return acc;
}

char sign_char(std::int64_t v) { return v > 0 ? '+' : '-'; }

void pad_to(std::string& s, int len) {
  if (static_cast<int>(s.size()) < len) s.append(static_cast<std::size_t>(len) - s.size(), '+');
}

void check_coordinates(const std::vector<int>& idx, int n) {
  for (int j : idx)
    if (j < 0 || j >= n)
      fail(Errc::domain_error, "coordinate index " + std::to_string(j) + " outside dimension " +
                                   std::to_string(n));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string expect_field(const std::string& part, const std::string& key,
                         const std::string& whole) {
  if (part.size() < key.size() + 1 || part.compare(0, key.size(), key) != 0 ||
      part[key.size()] != '=')
    fail(Errc::parse_error, "expected '" + key + "=' in codeword '" + whole + "'");
  return part.substr(key.size() + 1);
}

std::string check_signs(const std::string& s, const std::string& whole) {
  for (char c : s)
    if (c != '+' && c != '-')
      fail(Errc::parse_error, "sign field holds '" + std::string(1, c) + "' in codeword '" +
                                  whole + "'");
  return s;
}

std::vector<int> parse_indices(const std::string& s, const std::string& whole) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(Errc::parse_error, "bad index '" + part + "' in codeword '" + whole + "'");
    }
  }
  return out;
}

int parse_count(const std::string& s, const std::string& whole) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Errc::parse_error, "bad count '" + s + "' in codeword '" + whole + "'");
  }
}

}  // namespace

Budget make_budget(const VectorSet& B, double lambda) {
  if (!(lambda > 1.0 / static_cast<double>(B.n) && lambda <= 1.0))
    fail(Errc::domain_error, "lambda must lie in (1/n, 1]");
  const auto params = solve_parameters(lambda);
  Budget b;
  b.beta = B.beta();
  b.lambda = lambda;
  b.kappa = params.kappa;
  b.tau = params.tau;
  return b;
}

int member_code_length(int n, const Budget& b) {
  return std::max(0, floor_int(n * (b.beta - 3.0 * b.lambda)));
}

int direction_code_length(int n, const Budget& b) {
  return floor_int(n * (1.0 - b.beta + 3.0 * b.lambda));
}

int strong_capacity(int n, const Budget& b) { return floor_int(n * b.tau); }

int sparse_capacity(int n, const Budget& b) {
  return floor_int(static_cast<double>(n) / std::log2(1.0 / b.kappa));
}

bool degenerate_angle(double eta) { return std::fabs(std::sin(2.0 * eta)) < 1e-12; }

YCodeword encode_member(const VectorSet& B, std::uint64_t y, const Budget& b) {
  B.index_of(y);
  const int n = B.n;
  const int t = member_code_length(n, b);
  const Rational kap = rational_from_double(b.kappa);
  const auto path = prefix_path(B, y);
  YCodeword code;
  for (int j = 0; j < n; ++j) {
    const auto cm = static_cast<std::int64_t>(path.mid[j] - path.lo[j]);
    const auto cp = static_cast<std::int64_t>(path.hi[j] - path.mid[j]);
    const bool yplus = sign_bit(y, n, j);
    if (Rational(std::min(cm, cp), cm + cp) >= kap) {
      code.q += yplus ? '+' : '-';
    } else {
      const auto cy = yplus ? cp : cm;
      const auto cother = yplus ? cm : cp;
      if (cy < cother) code.S.push_back(j);
    }
  }
  code.active_count = static_cast<int>(code.q.size());
  if (code.active_count > t)
    fail(Errc::hypothesis_failed, "active set size " + std::to_string(code.active_count) +
                                      " exceeds code length " + std::to_string(t));
  pad_to(code.q, t);
  if (static_cast<int>(code.S.size()) > sparse_capacity(n, b))
    fail(Errc::hypothesis_failed, "rare-value set exceeds its capacity");
  return code;
}

std::uint64_t decode_member(const VectorSet& B, const YCodeword& code, const Budget& b) {
  const int n = B.n;
  check_coordinates(code.S, n);
  const Rational kap = rational_from_double(b.kappa);
  std::vector<char> in_S(static_cast<std::size_t>(n), 0);
  for (int j : code.S) in_S[static_cast<std::size_t>(j)] = 1;

  std::uint64_t y = 0;
  std::size_t lo = 0, hi = B.size();
  std::size_t qi = 0;
  for (int j = 0; j < n; ++j) {
    if (lo == hi) fail(Errc::undecodable, "decoded prefix left the set", j + 1);
    const int shift = n - 1 - j;
    auto first = B.members.begin();
    auto mid_it = std::partition_point(first + lo, first + hi, [&](std::uint64_t w) {
      return ((w >> shift) & 1u) == 0;
    });
    const auto mid = static_cast<std::size_t>(mid_it - first);
    const auto cm = static_cast<std::int64_t>(mid - lo);
    const auto cp = static_cast<std::int64_t>(hi - mid);
    bool yplus;
    if (Rational(std::min(cm, cp), cm + cp) >= kap) {
      if (qi >= code.q.size()) fail(Errc::undecodable, "codeword q exhausted", j + 1);
      yplus = code.q[qi++] == '+';
    } else {
      if (cm == cp)
        fail(Errc::undecodable, "equal conditional counts off the active set", j + 1);
      const bool plus_rarer = cp < cm;
      yplus = in_S[static_cast<std::size_t>(j)] ? plus_rarer : !plus_rarer;
    }
    if (yplus) {
      y |= std::uint64_t{1} << shift;
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return y;
}

XCodeword encode_direction(const VectorSet& B, std::uint64_t y, const Direction& x, double eta,
                           const Budget& b) {
  B.index_of(y);
  const int n = B.n;
  check_direction_entries(x, n);
  if (degenerate_angle(eta))
    fail(Errc::degenerate_angle, "sin(2 eta) vanishes at eta = " + render_double(eta));
  const auto prof = phase_profile(x, B, y, eta, b.kappa);
  const auto cond = conditional_profile(B, y, b.kappa);
  if (static_cast<double>(cond.active.size()) <= n * (b.beta - 3.0 * b.lambda))
    fail(Errc::hypothesis_failed, "active set of y is small enough for the member codec");
  const int s_cap = strong_capacity(n, b);
  if (static_cast<int>(prof.strong.size()) > s_cap)
    fail(Errc::hypothesis_failed, "strong set size " + std::to_string(prof.strong.size()) +
                                      " exceeds capacity " + std::to_string(s_cap));
  std::vector<char> in_J(static_cast<std::size_t>(n), 0);
  for (int j : cond.active) in_J[static_cast<std::size_t>(j)] = 1;
  std::vector<char> in_G(static_cast<std::size_t>(n), 0);
  for (int j : prof.strong) in_G[static_cast<std::size_t>(j)] = 1;

  XCodeword code;
  for (int j = 0; j < n; ++j)
    if (!in_J[static_cast<std::size_t>(j)]) code.q += sign_char(x[j]);
  code.off_count = static_cast<int>(code.q.size());
  pad_to(code.q, direction_code_length(n, b));
  code.G = prof.strong;
  for (int j = n - 1; j >= 0; --j)
    if (in_G[static_cast<std::size_t>(j)]) code.r += sign_char(x[j]);
  pad_to(code.r, s_cap);
  return code;
}

Direction decode_direction(const VectorSet& B, std::uint64_t y, const XCodeword& code,
                           double eta, const Budget& b) {
  B.index_of(y);
  const int n = B.n;
  check_coordinates(code.G, n);
  if (degenerate_angle(eta))
    fail(Errc::degenerate_angle, "sin(2 eta) vanishes at eta = " + render_double(eta));
  const auto cond = conditional_profile(B, y, b.kappa);
  if (static_cast<double>(cond.active.size()) <= n * (b.beta - 3.0 * b.lambda))
    fail(Errc::hypothesis_failed, "active set of y is small enough for the member codec");
  std::vector<char> in_J(static_cast<std::size_t>(n), 0);
  for (int j : cond.active) in_J[static_cast<std::size_t>(j)] = 1;
  std::vector<char> in_G(static_cast<std::size_t>(n), 0);
  for (int j : code.G) in_G[static_cast<std::size_t>(j)] = 1;

  int off_total = 0;
  for (int j = 0; j < n; ++j) off_total += in_J[static_cast<std::size_t>(j)] ? 0 : 1;

  const auto path = prefix_path(B, y);
  DescendingScan scan(B, eta);
  const double thr = strong_threshold(eta);
  Direction x(static_cast<std::size_t>(n), 0);
  int qpos = off_total;
  std::size_t ri = 0;
  for (int j = n - 1; j >= 0; --j) {
    std::int64_t xj;
    if (!in_J[static_cast<std::size_t>(j)]) {
      --qpos;
      if (qpos < 0 || qpos >= static_cast<int>(code.q.size()))
        fail(Errc::undecodable, "codeword q exhausted", j + 1);
      xj = code.q[static_cast<std::size_t>(qpos)] == '+' ? 1 : -1;
    } else if (in_G[static_cast<std::size_t>(j)]) {
      if (ri >= code.r.size()) fail(Errc::undecodable, "codeword r exhausted", j + 1);
      xj = code.r[ri++] == '+' ? 1 : -1;
    } else {
      const double ph = scan.phase_at(path, j);
      const bool plus_ok = sin_sq(ph + eta) < thr;
      const bool minus_ok = sin_sq(ph - eta) < thr;
      if (plus_ok == minus_ok)
        fail(Errc::undecodable,
             plus_ok ? "both signs fall below the strong threshold"
                     : "no sign falls below the strong threshold",
             j + 1);
      xj = plus_ok ? 1 : -1;
    }
    x[static_cast<std::size_t>(j)] = xj;
    scan.fold(j, xj);
  }
  return x;
}

CensusBound small_active_census(const VectorSet& B, const Budget& b) {
  const int n = B.n;
  const int t = member_code_length(n, b);
  const Rational kap = rational_from_double(b.kappa);
  CensusBound out;
  for (auto y : B.members) {
    const auto path = prefix_path(B, y);
    int active = 0;
    for (int j = 0; j < n; ++j) {
      const auto cm = static_cast<std::int64_t>(path.mid[j] - path.lo[j]);
      const auto cp = static_cast<std::int64_t>(path.hi[j] - path.mid[j]);
      if (Rational(std::min(cm, cp), cm + cp) >= kap) ++active;
    }
    if (active <= t) ++out.count;
  }
  out.bound = static_cast<double>(B.size()) *
              std::exp2(-2.0 * b.lambda * static_cast<double>(n));
  out.codeword_space = (BigInt(1) << t) * binomial_sum(n, sparse_capacity(n, b));
  out.vacuous = n * (b.beta - 3.0 * b.lambda) < 0.0;
  return out;
}

CensusBound direction_degree_census(const VectorSet& B, std::uint64_t y, double eta,
                                    const Budget& b, std::int64_t max_directions) {
  B.index_of(y);
  const int n = B.n;
  if (n >= 62 || (std::int64_t{1} << n) > max_directions)
    fail(Errc::too_large, "2^" + std::to_string(n) + " directions exceed the budget");
  const auto cond = conditional_profile(B, y, b.kappa);
  if (static_cast<double>(cond.active.size()) <= n * (b.beta - 3.0 * b.lambda))
    fail(Errc::hypothesis_failed, "active set of y is small enough for the member codec");
  std::vector<char> in_J(static_cast<std::size_t>(n), 0);
  for (int j : cond.active) in_J[static_cast<std::size_t>(j)] = 1;

  const int s_cap = strong_capacity(n, b);
  const double thr = strong_threshold(eta);
  const auto path = prefix_path(B, y);
  DescendingScan scan(B, eta);

  CensusBound out;
  out.vacuous = degenerate_angle(eta);

  // Depth-first over suffixes of x; the scan state is shared, snapshotted per
  // branch, so every leaf sees exactly the float values a fresh descending
  // decode would.
  auto dfs = [&](auto&& self, int j, int strong_count) -> void {
    if (strong_count > s_cap) return;
    if (j < 0) {
      ++out.count;
      return;
    }
    double ph = 0.0;
    if (in_J[static_cast<std::size_t>(j)]) ph = scan.phase_at(path, j);
    const auto saved = scan.weights();
    for (int sign = 0; sign < 2; ++sign) {
      const std::int64_t xj = sign == 0 ? 1 : -1;
      int inc = 0;
      if (in_J[static_cast<std::size_t>(j)] &&
          sin_sq(ph + static_cast<double>(xj) * eta) >= thr)
        inc = 1;
      if (sign == 1) scan.set_weights(saved);
      scan.fold(j, xj);
      self(self, j - 1, strong_count + inc);
    }
    scan.set_weights(saved);
  };
  dfs(dfs, n - 1, 0);

  out.bound = std::exp2(static_cast<double>(n) * (1.0 - b.beta + 4.0 * b.lambda));
  out.codeword_space = (BigInt(1) << direction_code_length(n, b)) * binomial_sum(n, s_cap) *
                       (BigInt(1) << s_cap);
  return out;
}

std::string render_y_codeword(const YCodeword& code) {
  std::string out = "q=" + code.q + ";S=";
  for (std::size_t i = 0; i < code.S.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(code.S[i]);
  }
  out += ";m=" + std::to_string(code.active_count);
  return out;
}

YCodeword parse_y_codeword(const std::string& text) {
  const auto parts = split(text, ';');
  if (parts.size() != 3) fail(Errc::parse_error, "expected 3 fields in codeword '" + text + "'");
  YCodeword code;
  code.q = check_signs(expect_field(parts[0], "q", text), text);
  code.S = parse_indices(expect_field(parts[1], "S", text), text);
  code.active_count = parse_count(expect_field(parts[2], "m", text), text);
  return code;
}

std::string render_x_codeword(const XCodeword& code) {
  std::string out = "q=" + code.q + ";G=";
  for (std::size_t i = 0; i < code.G.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(code.G[i]);
  }
  out += ";r=" + code.r + ";m=" + std::to_string(code.off_count);
  return out;
}

XCodeword parse_x_codeword(const std::string& text) {
  const auto parts = split(text, ';');
  if (parts.size() != 4) fail(Errc::parse_error, "expected 4 fields in codeword '" + text + "'");
  XCodeword code;
  code.q = check_signs(expect_field(parts[0], "q", text), text);
  code.G = parse_indices(expect_field(parts[1], "G", text), text);
  code.r = check_signs(expect_field(parts[2], "r", text), text);
  code.off_count = parse_count(expect_field(parts[3], "m", text), text);
  return code;
}

}  // namespace ipac
