#include "ipac/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "ipac/distribution.hpp"

namespace ipac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sin_sq(double t) {
  const double s = std::sin(t);
  return s * s;
}

void check_direction(const Direction& x, const VectorSet& B) {
  if (static_cast<int>(x.size()) != B.n)
    fail(Errc::dimension_mismatch, "direction length " + std::to_string(x.size()) +
                                       " vs set dimension " + std::to_string(B.n));
}

std::int64_t inner_product(const Direction& x, std::uint64_t y, int n) {
  std::int64_t ip = 0;
  for (int j = 0; j < n; ++j) ip += x[j] * sign_at(y, n, j);
  return ip;
}

std::complex<double> mean_exponential(const Direction& x, const VectorSet& B, double eta) {
  std::complex<double> acc{0.0, 0.0};
  for (auto y : B.members)
    acc += std::polar(1.0, eta * static_cast<double>(inner_product(x, y, B.n)));
  return acc / static_cast<double>(B.size());
}

void check_nu_kappa(double nu, double kappa) {
  if (!(nu > 0.0 && nu <= 1.0)) fail(Errc::domain_error, "nu must lie in (0,1]");
  if (!(kappa > 0.0 && kappa < 0.5)) fail(Errc::domain_error, "kappa must lie in (0,1/2)");
}

void check_power_constant(double kappa, double c0) {
  if (!(c0 > 0.0)) fail(Errc::bad_constant, "c0 must be positive");
  const double limit = max_power_constant(kappa);
  if (c0 > limit * (1.0 + 1e-12))
    fail(Errc::bad_constant, "c0 = " + std::to_string(c0) + " exceeds admissible " +
                                 std::to_string(limit));
}

std::vector<std::int64_t> gather(const std::vector<std::int64_t>& d, const std::vector<int>& G) {
  std::vector<std::int64_t> out;
  out.reserve(G.size());
  for (int g : G) {
    if (g < 0 || g >= static_cast<int>(d.size()))
      fail(Errc::domain_error, "index " + std::to_string(g) + " outside the difference list");
    out.push_back(d[static_cast<std::size_t>(g)]);
  }
  return out;
}

}  // namespace

std::complex<double> fourier_coefficient(const Direction& x, const VectorSet& B, double theta) {
  check_direction(x, B);
  const auto dist = inner_product_distribution(x, B);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < dist.size(); ++i)
    acc += to_double(dist.mass()[i]) *
           std::polar(1.0, kTwoPi * theta * static_cast<double>(dist.support()[i]));
  return acc;
}

StarBound star_bound(const Direction& x, const VectorSet& B, std::int64_t nodes) {
  check_direction(x, B);
  std::int64_t M = 0;
  for (auto v : x) M += std::llabs(v);
  if (nodes == 0) nodes = 4 * (M + 1);
  if (nodes < 2 * M + 1)
    fail(Errc::grid_too_coarse, std::to_string(nodes) + " nodes for support radius " +
                                    std::to_string(M));
  const auto dist = inner_product_distribution(x, B);
  std::vector<double> mass(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) mass[i] = to_double(dist.mass()[i]);
  double acc = 0.0;
  for (std::int64_t t = 0; t < nodes; ++t) {
    const double theta = static_cast<double>(t) / static_cast<double>(nodes);
    std::complex<double> F{0.0, 0.0};
    for (std::size_t i = 0; i < dist.size(); ++i)
      F += mass[i] * std::polar(1.0, kTwoPi * theta * static_cast<double>(dist.support()[i]));
    acc += std::abs(F);
  }
  const double value = acc / static_cast<double>(nodes);
  // |d/dtheta |F|| <= 2 pi sum_k |k| p_k <= 2 pi M, so the rectangle rule on a
  // unit period is within pi*M/nodes of the integral.
  const double err = std::numbers::pi * static_cast<double>(M) / static_cast<double>(nodes);
  return {value, err, nodes};
}

PrefixPath prefix_path(const VectorSet& B, std::uint64_t y) {
  PrefixPath p;
  p.n = B.n;
  p.lo.resize(B.n);
  p.mid.resize(B.n);
  p.hi.resize(B.n);
  std::size_t lo = 0, hi = B.size();
  for (int j = 0; j < B.n; ++j) {
    const int shift = B.n - 1 - j;
    auto first = B.members.begin();
    auto mid_it = std::partition_point(first + lo, first + hi, [&](std::uint64_t w) {
      return ((w >> shift) & 1u) == 0;
    });
    const auto mid = static_cast<std::size_t>(mid_it - first);
    p.lo[j] = lo;
    p.mid[j] = mid;
    p.hi[j] = hi;
    if (sign_bit(y, B.n, j)) lo = mid;
    else hi = mid;
  }
  return p;
}

PrefixPath suffix_path(const TwoCubeSubset& A0, std::uint64_t x_picks) {
  const int n = A0.n();
  PrefixPath p;
  p.n = n;
  p.lo.resize(n);
  p.mid.resize(n);
  p.hi.resize(n);
  std::size_t lo = 0, hi = A0.size();
  for (int j = n - 1; j >= 0; --j) {
    auto first = A0.picks.begin();
    auto mid_it = std::partition_point(first + lo, first + hi, [&](std::uint64_t w) {
      return ((w >> j) & 1u) == 0;
    });
    const auto mid = static_cast<std::size_t>(mid_it - first);
    p.lo[j] = lo;
    p.mid[j] = mid;
    p.hi[j] = hi;
    if ((x_picks >> j) & 1u) lo = mid;
    else hi = mid;
  }
  return p;
}

DescendingScan::DescendingScan(const VectorSet& B, double eta)
    : B_(B), eta_(eta), w_(B.size(), {1.0, 0.0}) {}

std::complex<double> DescendingScan::range_sum(std::size_t begin, std::size_t end) const {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t m = begin; m < end; ++m) acc += w_[m];
  return acc;
}

void DescendingScan::fold(int j, std::int64_t xj) {
  const auto f = std::polar(1.0, eta_ * static_cast<double>(xj));
  const auto fc = std::conj(f);
  for (std::size_t m = 0; m < w_.size(); ++m)
    w_[m] *= sign_bit(B_.members[m], B_.n, j) ? f : fc;
}

double DescendingScan::phase_at(const PrefixPath& path, int j) const {
  const std::size_t lo = path.lo[j], mid = path.mid[j], hi = path.hi[j];
  const auto cm = static_cast<double>(mid - lo);
  const auto cp = static_cast<double>(hi - mid);
  if (mid == lo || hi == mid) return 0.0;
  const auto z = (range_sum(mid, hi) / cp) * std::conj(range_sum(lo, mid) / cm);
  if (std::abs(z) == 0.0) return 0.0;
  return std::arg(z) / 2.0;
}

ConditionalProfile conditional_profile(const VectorSet& B, std::uint64_t y, double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(Errc::domain_error, "kappa must lie in (0,1)");
  B.index_of(y);
  const auto path = prefix_path(B, y);
  const Rational kap = rational_from_double(kappa);
  ConditionalProfile prof;
  prof.kappa = kappa;
  prof.gamma.reserve(B.n);
  for (int j = 0; j < B.n; ++j) {
    const auto cm = static_cast<std::int64_t>(path.mid[j] - path.lo[j]);
    const auto cp = static_cast<std::int64_t>(path.hi[j] - path.mid[j]);
    const auto tot = cm + cp;
    prof.gamma.emplace_back(std::min(cm, cp), tot);
    if (prof.gamma.back() >= kap) prof.active.push_back(j);
  }
  return prof;
}

PhaseProfile phase_profile(const Direction& x, const VectorSet& B, std::uint64_t y, double eta,
                           double kappa) {
  check_direction(x, B);
  const auto cond = conditional_profile(B, y, kappa);
  const auto path = prefix_path(B, y);
  PhaseProfile prof;
  prof.eta = eta;
  prof.phi.assign(B.n, 0.0);
  prof.zero_product.assign(B.n, 0);
  DescendingScan scan(B, eta);
  for (int j = B.n - 1; j >= 0; --j) {
    const std::size_t lo = path.lo[j], mid = path.mid[j], hi = path.hi[j];
    if (mid > lo && hi > mid) {
      const auto z = (scan.range_sum(mid, hi) / static_cast<double>(hi - mid)) *
                     std::conj(scan.range_sum(lo, mid) / static_cast<double>(mid - lo));
      if (std::abs(z) == 0.0) prof.zero_product[j] = 1;
      else prof.phi[j] = std::arg(z) / 2.0;
    }
    scan.fold(j, x[j]);
  }
  const double threshold = strong_threshold(eta);
  for (int j : cond.active)
    if (sin_sq(prof.phi[j] + static_cast<double>(x[j]) * eta) >= threshold)
      prof.strong.push_back(j);
  return prof;
}

SuffixProfile suffix_profile(const TwoCubeSubset& A0, std::uint64_t x_picks, double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(Errc::domain_error, "kappa must lie in (0,1)");
  if (!std::binary_search(A0.picks.begin(), A0.picks.end(), x_picks))
    fail(Errc::not_in_set, "direction picks not in the subset");
  const auto path = suffix_path(A0, x_picks);
  const Rational kap = rational_from_double(kappa);
  SuffixProfile prof;
  prof.kappa = kappa;
  prof.mu.resize(A0.n());
  for (int j = 0; j < A0.n(); ++j) {
    const auto cv = static_cast<std::int64_t>(path.mid[j] - path.lo[j]);
    const auto cu = static_cast<std::int64_t>(path.hi[j] - path.mid[j]);
    prof.mu[j] = Rational(std::min(cu, cv), cu + cv);
    if (prof.mu[j] >= kap) prof.active.push_back(j);
  }
  return prof;
}

PairProfileTable build_pair_profiles(const VectorSet& B, const Direction& x, double eta) {
  check_direction(x, B);
  PairProfileTable T;
  T.n = B.n;
  T.size = B.size();
  const std::size_t cells = T.size * static_cast<std::size_t>(T.n);
  T.gamma_min.assign(cells, 0);
  T.gamma_tot.assign(cells, 0);
  T.phi.assign(cells, 0.0);
  T.zero_product.assign(cells, 0);

  std::vector<std::complex<double>> fp(T.n), fm(T.n);
  for (int j = 0; j < T.n; ++j) {
    fp[j] = std::polar(1.0, eta * static_cast<double>(x[j]));
    fm[j] = std::conj(fp[j]);
  }

  // Returns sum over [lo,hi) of exp(i eta <x_{>=j}, y_{>=j}>).
  auto dfs = [&](auto&& self, std::size_t lo, std::size_t hi, int j) -> std::complex<double> {
    if (j == T.n) return {static_cast<double>(hi - lo), 0.0};
    const int shift = T.n - 1 - j;
    auto first = B.members.begin();
    auto mid_it = std::partition_point(first + lo, first + hi, [&](std::uint64_t w) {
      return ((w >> shift) & 1u) == 0;
    });
    const auto mid = static_cast<std::size_t>(mid_it - first);
    const std::complex<double> Um =
        mid > lo ? self(self, lo, mid, j + 1) : std::complex<double>{0.0, 0.0};
    const std::complex<double> Up =
        hi > mid ? self(self, mid, hi, j + 1) : std::complex<double>{0.0, 0.0};
    const auto cm = static_cast<std::int64_t>(mid - lo);
    const auto cp = static_cast<std::int64_t>(hi - mid);
    double ph = 0.0;
    std::uint8_t zp = 0;
    if (cm > 0 && cp > 0) {
      const auto z =
          (Up / static_cast<double>(cp)) * std::conj(Um / static_cast<double>(cm));
      if (std::abs(z) == 0.0) zp = 1;
      else ph = std::arg(z) / 2.0;
    }
    for (std::size_t m = lo; m < hi; ++m) {
      const auto cell = T.at(m, j);
      T.gamma_min[cell] = std::min(cm, cp);
      T.gamma_tot[cell] = cm + cp;
      T.phi[cell] = ph;
      T.zero_product[cell] = zp;
    }
    return fm[j] * Um + fp[j] * Up;
  };
  dfs(dfs, 0, B.size(), 0);
  return T;
}

CheckResult product_bound_check(const Direction& x, const VectorSet& B, double eta) {
  check_direction(x, B);
  const double lhs = std::norm(mean_exponential(x, B, eta));
  const auto T = build_pair_profiles(B, x, eta);
  double acc = 0.0;
  for (std::size_t m = 0; m < T.size; ++m) {
    double prod = 1.0;
    for (int j = 0; j < T.n; ++j) {
      const auto cell = T.at(m, j);
      const double gamma = static_cast<double>(T.gamma_min[cell]) /
                           static_cast<double>(T.gamma_tot[cell]);
      prod *= 1.0 - gamma * sin_sq(T.phi[cell] + static_cast<double>(x[j]) * eta);
    }
    acc += prod;
  }
  return {lhs, acc / static_cast<double>(T.size)};
}

double max_power_constant(double kappa, int grid) {
  return std::min(c1_estimate(kappa, grid), kappa * (1.0 - kappa));
}

CheckResult power_product_bound_check(const Direction& x, const VectorSet& B, double eta,
                                      double nu, double kappa, double c0) {
  check_direction(x, B);
  check_nu_kappa(nu, kappa);
  check_power_constant(kappa, c0);
  const double lhs = std::pow(std::abs(mean_exponential(x, B, eta)), 1.0 + nu);
  const auto T = build_pair_profiles(B, x, eta);
  const Rational kap = rational_from_double(kappa);
  double acc = 0.0;
  for (std::size_t m = 0; m < T.size; ++m) {
    double prod = 1.0;
    for (int j = 0; j < T.n; ++j) {
      const auto cell = T.at(m, j);
      if (Rational(T.gamma_min[cell], T.gamma_tot[cell]) < kap) continue;
      prod *= 1.0 - c0 * nu * sin_sq(T.phi[cell] + static_cast<double>(x[j]) * eta);
    }
    acc += prod;
  }
  return {lhs, acc / static_cast<double>(T.size)};
}

CheckResult direction_average_bound_check(const TwoCubeSubset& A0, const VectorSet& B,
                                          std::uint64_t y, double eta, double nu, double kappa,
                                          double c0) {
  if (A0.n() != B.n)
    fail(Errc::dimension_mismatch, "two-cube dimension " + std::to_string(A0.n()) +
                                       " vs set dimension " + std::to_string(B.n));
  check_nu_kappa(nu, kappa);
  check_power_constant(kappa, c0);
  const double c = std::min(c1_estimate(kappa), kappa * c0 / 8.0);
  const auto cond = conditional_profile(B, y, kappa);
  const auto path = prefix_path(B, y);
  const Rational kap = rational_from_double(kappa);
  const int n = B.n;

  std::vector<char> in_J(static_cast<std::size_t>(n), 0);
  for (int j : cond.active) in_J[static_cast<std::size_t>(j)] = 1;
  std::vector<double> sq_d(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    sq_d[j] = sin_sq(static_cast<double>(A0.cube.differences[j]) * eta);

  double lhs_acc = 0.0, rhs_acc = 0.0;
  for (std::size_t mx = 0; mx < A0.size(); ++mx) {
    const Direction x = A0.cube.direction(A0.picks[mx]);
    DescendingScan scan(B, eta);
    double prod = 1.0;
    for (int j = n - 1; j >= 0; --j) {
      if (in_J[static_cast<std::size_t>(j)]) {
        const double ph = scan.phase_at(path, j);
        prod *= 1.0 - c0 * nu * sin_sq(ph + static_cast<double>(x[j]) * eta);
      }
      scan.fold(j, x[j]);
    }
    lhs_acc += prod;

    const auto sp = suffix_path(A0, A0.picks[mx]);
    double expo = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!in_J[static_cast<std::size_t>(j)]) continue;
      const auto cv = static_cast<std::int64_t>(sp.mid[j] - sp.lo[j]);
      const auto cu = static_cast<std::int64_t>(sp.hi[j] - sp.mid[j]);
      if (Rational(std::min(cu, cv), cu + cv) >= kap) expo += sq_d[j];
    }
    rhs_acc += std::exp(-c * nu * expo);
  }
  const auto size = static_cast<double>(A0.size());
  return {std::pow(lhs_acc / size, 1.0 + nu), rhs_acc / size};
}

double spectral_mass(const std::vector<std::int64_t>& d, const std::vector<int>& G,
                     double theta) {
  double acc = 0.0;
  for (auto dj : gather(d, G)) acc += sin_sq(kTwoPi * theta * static_cast<double>(dj));
  return acc;
}

Rational spectral_moment_exact(const std::vector<std::int64_t>& d, const std::vector<int>& G,
                               int ell, const ConvLimits& limits) {
  if (ell < 1) fail(Errc::domain_error, "moment order must be positive");
  const auto dG = gather(d, G);
  if (dG.empty()) return Rational(0);
  const BigInt count = zero_sum_signed_tuples(dG, 2 * ell, limits);
  return Rational(count, BigInt(1) << (2 * ell));
}

double spectral_tail_estimate(const std::vector<std::int64_t>& d, const std::vector<int>& G,
                              double rho, std::int64_t grid) {
  const auto dG = gather(d, G);
  std::int64_t maxd = 1;
  for (auto v : dG) maxd = std::max<std::int64_t>(maxd, std::llabs(v));
  if (grid < 4 * maxd)
    fail(Errc::grid_too_coarse, std::to_string(grid) + " nodes for max difference " +
                                    std::to_string(maxd));
  std::int64_t below = 0;
  for (std::int64_t t = 0; t < grid; ++t) {
    double D = 0.0;
    const double theta = static_cast<double>(t) / static_cast<double>(grid);
    for (auto dj : dG) D += sin_sq(kTwoPi * theta * static_cast<double>(dj));
    if (D < rho) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(grid);
}

CheckResult sumset_containment_check(const std::vector<std::int64_t>& d,
                                     const std::vector<int>& G,
                                     const std::vector<double>& thetas) {
  if (thetas.empty()) fail(Errc::domain_error, "empty theta list");
  double total = 0.0, worst = 0.0;
  for (double t : thetas) {
    total += t;
    worst = std::max(worst, spectral_mass(d, G, t));
  }
  total -= std::floor(total);
  const auto m = static_cast<double>(thetas.size());
  return {spectral_mass(d, G, total), m * m * worst};
}

SineMaxGap sine_max_gap(double phi, double eta, std::int64_t u, std::int64_t v) {
  if (u == v) fail(Errc::zero_difference, "u and v must differ");
  const double a = std::fabs(std::sin(phi + eta * static_cast<double>(u)));
  const double b = std::fabs(std::sin(phi + eta * static_cast<double>(v)));
  const double bound = std::fabs(std::sin(eta * static_cast<double>(u - v))) / 2.0;
  return {std::max(a, b), bound};
}

double convexity_gap(double xi, double p, double nu) {
  if (!(xi >= 0.0 && xi <= 0.5)) fail(Errc::domain_error, "xi must lie in [0,1/2]");
  if (!(p > 0.0 && p < 1.0)) fail(Errc::domain_error, "p must lie in (0,1)");
  if (!(nu >= 0.0 && nu <= 1.0)) fail(Errc::domain_error, "nu must lie in [0,1]");
  const double mixed = p + (1.0 - p) * std::pow(xi, 1.0 + nu);
  const double outer = std::pow(p + (1.0 - p) * xi, 1.0 + nu);
  return mixed - outer;
}

double c1_estimate(double kappa, int grid) {
  if (!(kappa > 0.0 && kappa < 0.5)) fail(Errc::domain_error, "kappa must lie in (0,1/2)");
  if (kappa_assumption_margin(kappa) <= 0.0)
    fail(Errc::domain_error, "4^kappa <= exp(kappa + kappa^2) at kappa = " +
                                 std::to_string(kappa));
  if (grid < 2) fail(Errc::grid_too_coarse, "nu grid needs at least 2 points");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid; ++i) {
    const double nu = static_cast<double>(i) / static_cast<double>(grid);
    best = std::min(best, convexity_gap(0.5, kappa, nu) / nu);
  }
  return best;
}

double kappa_assumption_margin(double kappa) {
  return std::exp2(2.0 * kappa) - std::exp(kappa + kappa * kappa);
}

}  // namespace ipac
