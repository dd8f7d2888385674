#include "ipac/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ipac {

namespace {

void check_ell(int ell) {
  if (ell < 1) fail(Errc::domain_error, "ell must be positive");
}

BigInt sum_of_squared_coefficients(const SparsePoly& p) {
  BigInt acc = 0;
  for (const auto& [e, c] : p) acc += c * c;
  return acc;
}

double solve_increasing(double target, double lo, double hi, double (*f)(double)) {
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double entropy_plus_id(double t) { return t + binary_entropy(t); }

}  // namespace

BigInt r_ell(const TwoCube& A, int ell, const ConvLimits& limits) {
  check_ell(ell);
  return zero_sum_signed_tuples(A.differences, 2 * ell, limits);
}

std::vector<BigInt> r_ell_table(const TwoCube& A, int ell_max, const ConvLimits& limits) {
  check_ell(ell_max);
  const SparsePoly base = signed_base_poly(A.differences);
  const SparsePoly sq = poly_mul(base, base, limits);
  std::vector<BigInt> out;
  out.reserve(ell_max);
  SparsePoly cur = sq;
  out.push_back(constant_coefficient(cur));
  for (int ell = 2; ell <= ell_max; ++ell) {
    cur = poly_mul(cur, sq, limits);
    out.push_back(constant_coefficient(cur));
  }
  return out;
}

const char* sidon_class_name(SidonClass c) {
  switch (c) {
    case SidonClass::sidon: return "sidon";
    case SidonClass::weak_sidon: return "weak_sidon";
    case SidonClass::neither: return "neither";
  }
  return "neither";
}

SidonCounts sidon_classify(const std::vector<std::int64_t>& S) {
  if (S.empty()) fail(Errc::domain_error, "empty set");
  {
    auto sorted = S;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(Errc::domain_error, "set elements must be distinct");
  }
  const auto n = static_cast<std::int64_t>(S.size());

  SparsePoly plain;
  {
    auto sorted = S;
    std::sort(sorted.begin(), sorted.end());
    for (auto s : sorted) plain.emplace_back(s, 1);
  }
  const ConvLimits limits{};
  SidonCounts out;
  out.pair_count = sum_of_squared_coefficients(poly_mul(plain, plain, limits));
  out.signed_count =
      sum_of_squared_coefficients(poly_mul(signed_base_poly(S), signed_base_poly(S), limits));
  out.pair_target = BigInt(n) * (2 * n - 1);  // 4 C(n,2) + n
  out.signed_limit = BigInt(100) * n * n;
  if (out.pair_count == out.pair_target) out.cls = SidonClass::sidon;
  else if (out.signed_count <= out.signed_limit) out.cls = SidonClass::weak_sidon;
  else out.cls = SidonClass::neither;
  return out;
}

double halasz_R_formula(const BigInt& r, int n, double C, int ell) {
  check_ell(ell);
  if (n < 1) fail(Errc::invalid_dimension, "n must be positive");
  if (!(C > 0.0)) fail(Errc::domain_error, "C must be positive");
  const double nd = static_cast<double>(n);
  return std::pow(C, ell) * to_double(r) / std::pow(nd, 2.0 * ell + 0.5) +
         std::exp(-nd / C);
}

double halasz_R(const TwoCube& A, double C, int ell, const ConvLimits& limits) {
  return halasz_R_formula(r_ell(A, ell, limits), A.n(), C, ell);
}

RMin halasz_R_min(const TwoCube& A, double C, int ell_max, const ConvLimits& limits) {
  const auto table = r_ell_table(A, ell_max, limits);
  RMin best{std::numeric_limits<double>::infinity(), 0};
  for (int ell = 1; ell <= ell_max; ++ell) {
    const double v = halasz_R_formula(table[static_cast<std::size_t>(ell - 1)], A.n(), C, ell);
    if (v < best.value) best = {v, ell};
  }
  return best;
}

std::vector<double> default_nu_grid() {
  constexpr int kPoints = 64;
  std::vector<double> grid(kPoints);
  const double lo = std::log(1e-6);
  for (int i = 0; i < kPoints; ++i)
    grid[i] = std::exp(lo * (1.0 - static_cast<double>(i) / (kPoints - 1)));
  grid.back() = 1.0;
  return grid;
}

MuBound mu_bound_from_R(double R, int n, double C, const std::vector<double>& nu_grid) {
  if (nu_grid.empty()) fail(Errc::domain_error, "empty nu grid");
  if (!(C > 0.0)) fail(Errc::domain_error, "C must be positive");
  MuBound best;
  best.mu = std::numeric_limits<double>::infinity();
  for (double nu : nu_grid) {
    if (!(nu > 0.0 && nu <= 1.0)) fail(Errc::domain_error, "nu grid points must lie in (0,1]");
    const double rhs = 3.0 * std::exp(-nu * static_cast<double>(n) / C) +
                       R / (50.0 * std::sqrt(nu));
    const double candidate = std::pow(rhs, 1.0 / ((1.0 + nu) * (1.0 + nu)));
    if (candidate < best.mu) {
      best.mu = candidate;
      best.nu = nu;
    }
  }
  if (!(best.mu < 1.0)) {
    best.mu = 1.0;
    best.vacuous = true;
  }
  return best;
}

MuBound mu_bound(const TwoCube& A, double C, const std::vector<double>& nu_grid, int ell_max,
                 const ConvLimits& limits) {
  return mu_bound_from_R(halasz_R_min(A, C, ell_max, limits).value, A.n(), C, nu_grid);
}

double binary_entropy(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) fail(Errc::domain_error, "entropy argument outside [0,1]");
  if (xi == 0.0 || xi == 1.0) return 0.0;
  return -xi * std::log2(xi) - (1.0 - xi) * std::log2(1.0 - xi);
}

EntropyParameters solve_parameters(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    fail(Errc::no_solution, "lambda must lie in (0,1]");
  EntropyParameters out;
  out.lambda = lambda;

  // H is increasing on [0,1/2]; lambda = 1 pins the endpoint exactly.
  double g;
  if (lambda == 1.0) g = 0.5;
  else g = solve_increasing(lambda, 0.0, 0.5, &binary_entropy);
  out.kappa = std::exp2(-1.0 / g);
  if (out.kappa == 0.0) fail(Errc::no_solution, "kappa underflows at this lambda");

  // t + H(t) is increasing for t < 2/3 and spans (0, 2/3 + H(2/3)) there.
  out.tau = solve_increasing(lambda, 0.0, 2.0 / 3.0, &entropy_plus_id);
  return out;
}

StructureProfile structure_profile(const TwoCube& A, double C, int ell_max,
                                   const std::vector<double>& nu_grid,
                                   const ConvLimits& limits) {
  StructureProfile p;
  p.n = A.n();
  p.C = C;
  p.ell_max = ell_max;
  p.differences = A.differences;
  const auto table = r_ell_table(A, ell_max, limits);
  p.R_min = {std::numeric_limits<double>::infinity(), 0};
  for (int ell = 1; ell <= ell_max; ++ell) {
    const auto& r = table[static_cast<std::size_t>(ell - 1)];
    p.r[ell] = r;
    const double v = halasz_R_formula(r, p.n, C, ell);
    p.R_values[ell] = v;
    if (v < p.R_min.value) p.R_min = {v, ell};
  }
  p.mu = mu_bound_from_R(p.R_min.value, p.n, C, nu_grid);
  p.nu_grid_size = nu_grid.size();

  auto distinct = A.differences;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  p.sidon = sidon_classify(distinct);
  return p;
}

std::string structure_profile_json(const StructureProfile& p) {
  std::ostringstream os;
  os << "{\"n\":" << p.n << ",\"C\":" << render_double(p.C) << ",\"ell_max\":" << p.ell_max;
  os << ",\"differences\":[";
  for (std::size_t j = 0; j < p.differences.size(); ++j)
    os << (j ? "," : "") << p.differences[j];
  os << "],\"r\":{";
  bool first = true;
  for (const auto& [ell, r] : p.r) {
    os << (first ? "" : ",") << "\"" << ell << "\":" << r.str();
    first = false;
  }
  os << "},\"R\":{";
  first = true;
  for (const auto& [ell, v] : p.R_values) {
    os << (first ? "" : ",") << "\"" << ell << "\":\"" << render_double(v) << "\"";
    first = false;
  }
  os << "},\"R_min\":{\"value\":\"" << render_double(p.R_min.value)
     << "\",\"ell\":" << p.R_min.ell << "}";
  os << ",\"mu\":{\"value\":\"" << render_double(p.mu.mu) << "\",\"nu\":\""
     << render_double(p.mu.nu) << "\",\"vacuous\":" << (p.mu.vacuous ? "true" : "false")
     << "}";
  os << ",\"sidon\":{\"class\":\"" << sidon_class_name(p.sidon.cls)
     << "\",\"pair_count\":" << p.sidon.pair_count.str()
     << ",\"signed_count\":" << p.sidon.signed_count.str()
     << ",\"pair_target\":" << p.sidon.pair_target.str()
     << ",\"signed_limit\":" << p.sidon.signed_limit.str() << "}";
  os << ",\"nu_grid_size\":" << p.nu_grid_size << "}";
  return os.str();
}

}  // namespace ipac
