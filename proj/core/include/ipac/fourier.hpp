#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "ipac/domain.hpp"
#include "ipac/polyconv.hpp"

namespace ipac {

// --- Fourier transform of the inner-product law -----------------------------

// F(theta) = E_Y exp(2*pi*i*theta*<x,Y>), Y uniform on B.
std::complex<double> fourier_coefficient(const Direction& x, const VectorSet& B, double theta);

struct StarBound {
  double value;        // discrete mean of |F| over the node grid
  double error_bound;  // Lipschitz bound on the distance to the true integral
  std::int64_t nodes;
};

// Discrete E_theta |F(theta)| on a uniform grid. With nodes >= 2*sum|x_j|+1
// (enforced) the discrete mean already dominates every point mass, so the
// value upper-bounds the concentration probability outright. Default node
// count when nodes == 0: 4*(sum|x_j| + 1).
StarBound star_bound(const Direction& x, const VectorSet& B, std::int64_t nodes = 0);

// --- conditional profiles ---------------------------------------------------

// gamma_j(y) = min_e Pr[Y_j = e | Y_<j = y_<j]; active = {j : gamma_j >= kappa}
// (indices 0-based). Membership decided in exact arithmetic.
struct ConditionalProfile {
  std::vector<Rational> gamma;
  std::vector<int> active;
  double kappa;
};

ConditionalProfile conditional_profile(const VectorSet& B, std::uint64_t y, double kappa);

// Half-phase profile of x against y. phi[j] is half the phase of
// Z_plus * conj(Z_minus), where Z_e is the conditional suffix transform
// E[exp(i*eta*<x_{>j}, Y_{>j}>) | Y_j = e, Y_<j = y_<j]. phi of the last
// coordinate is 0 by convention, as is phi wherever gamma_j = 0 or the
// product vanishes (zero_product marks the latter).
struct PhaseProfile {
  std::vector<double> phi;
  std::vector<std::uint8_t> zero_product;
  std::vector<int> strong;  // {j in active : sin^2(phi_j + x_j*eta) >= sin^2(2 eta)/4}
  double eta;
};

PhaseProfile phase_profile(const Direction& x, const VectorSet& B, std::uint64_t y, double eta,
                           double kappa);

// sin^2(2 eta)/4, the strong-coordinate cutoff. Every classifier and codec
// calls this one expression so their float values agree bit for bit.
inline double strong_threshold(double eta) {
  const double s = std::sin(2.0 * eta);
  return s * s / 4.0;
}

// mu_j(x) = min_e Pr[X_j = e | X_{>j} = x_{>j}], X uniform on the subset;
// active = {j : mu_j >= kappa}.
struct SuffixProfile {
  std::vector<Rational> mu;
  std::vector<int> active;
  double kappa;
};

SuffixProfile suffix_profile(const TwoCubeSubset& A0, std::uint64_t x_picks, double kappa);

// --- inequality checkers ----------------------------------------------------

struct CheckResult {
  double lhs, rhs;
  double margin() const { return rhs - lhs; }
  bool holds(double slack = 1e-9) const { return lhs <= rhs + slack; }
};

// |E_Y exp(i*eta*<x,Y>)|^2 <= E_Y prod_j (1 - gamma_j sin^2(phi_j + x_j eta))
CheckResult product_bound_check(const Direction& x, const VectorSet& B, double eta);

// |E_Y exp(i*eta*<x,Y>)|^{1+nu}
//   <= E_Y prod_{j in J(Y)} (1 - c0 nu sin^2(phi_j + x_j eta))
CheckResult power_product_bound_check(const Direction& x, const VectorSet& B, double eta,
                                      double nu, double kappa, double c0);

// (E_X prod_{j in J(y)} (1 - c0 nu sin^2(phi_j(X,y) + X_j eta)))^{1+nu}
//   <= E_X exp(-c nu sum_{j in G(X,y)} sin^2(d_j eta)),
// G(x,y) = suffix-active(x) ∩ prefix-active(y), c = min{c1(kappa), kappa c0/8}.
CheckResult direction_average_bound_check(const TwoCubeSubset& A0, const VectorSet& B,
                                          std::uint64_t y, double eta, double nu, double kappa,
                                          double c0);

// Largest admissible c0 for the power checks: min{c1_estimate(kappa), kappa(1-kappa)}.
double max_power_constant(double kappa, int grid = 1024);

// --- spectral mass of a direction set --------------------------------------

// D(theta) = sum_{j in G} sin^2(2 pi theta d_j); G holds 0-based indices into d.
double spectral_mass(const std::vector<std::int64_t>& d, const std::vector<int>& G,
                     double theta);

// Exact E_theta (|G| - 2 D(theta))^{2 ell} = (zero-sum signed tuple count) / 4^ell.
Rational spectral_moment_exact(const std::vector<std::int64_t>& d, const std::vector<int>& G,
                               int ell, const ConvLimits& limits = {});

// Grid estimate of the measure of {theta : D(theta) < rho}; nondecreasing in
// rho. Requires grid >= 4*max|d_j| nodes.
double spectral_tail_estimate(const std::vector<std::int64_t>& d, const std::vector<int>& G,
                              double rho, std::int64_t grid);

// lhs = D(sum theta_i mod 1), rhs = m^2 * max_i D(theta_i).
CheckResult sumset_containment_check(const std::vector<std::int64_t>& d,
                                     const std::vector<int>& G,
                                     const std::vector<double>& thetas);

// --- analytic claims --------------------------------------------------------

// achieved = max(|sin(phi + eta u)|, |sin(phi + eta v)|), bound = |sin(eta(u-v))|/2.
struct SineMaxGap {
  double achieved, bound;
  double margin() const { return achieved - bound; }
};
SineMaxGap sine_max_gap(double phi, double eta, std::int64_t u, std::int64_t v);

// Phi(xi, p, nu) = (p + (1-p) xi^{1+nu}) - (p + (1-p) xi)^{1+nu}, >= 0 on
// xi in [0,1/2], p in (0,1), nu in [0,1].
double convexity_gap(double xi, double p, double nu);

// min over a nu-grid of Phi(1/2, kappa, nu)/nu. Requires 4^kappa > exp(kappa+kappa^2).
double c1_estimate(double kappa, int grid = 1024);

// 4^kappa - exp(kappa + kappa^2); positive inside c1_estimate's domain.
double kappa_assumption_margin(double kappa);

// --- batch profile table (shared by the inequality checkers) ----------------

// Per-member gamma and phi rows for one direction x, laid out [m*n + j].
struct PairProfileTable {
  int n = 0;
  std::size_t size = 0;
  std::vector<std::int64_t> gamma_min, gamma_tot;
  std::vector<double> phi;
  std::vector<std::uint8_t> zero_product;

  std::size_t at(std::size_t m, int j) const { return m * static_cast<std::size_t>(n) + j; }
};

PairProfileTable build_pair_profiles(const VectorSet& B, const Direction& x, double eta);

// --- single-member scan machinery (shared with codecs) ----------------------

// Prefix ranges of y inside sorted B: at coordinate j, members [lo[j], hi[j])
// match y on coordinates < j and split at mid[j] (minus side first).
struct PrefixPath {
  int n = 0;
  std::vector<std::size_t> lo, mid, hi;
};

PrefixPath prefix_path(const VectorSet& B, std::uint64_t y);

// Suffix ranges of x_picks inside a two-cube subset: at coordinate j, members
// [lo[j], hi[j]) match on coordinates > j and split at mid[j] (v side first).
PrefixPath suffix_path(const TwoCubeSubset& A0, std::uint64_t x_picks);

// Maintains w[m] = exp(i*eta*<x_{>j}, y_m_{>j}>) for every member of B while
// coordinates are folded in descending order. Both codec sides drive this
// identically, so their phase values agree bit for bit.
class DescendingScan {
 public:
  DescendingScan(const VectorSet& B, double eta);

  // Sum of w over [begin, end); call before folding coordinate j to read the
  // stage-(j+1) values a phase at coordinate j needs.
  std::complex<double> range_sum(std::size_t begin, std::size_t end) const;

  // Folds coordinate j with direction entry xj into every member's w.
  void fold(int j, std::int64_t xj);

  // phi at coordinate j from the path's child ranges (stage j+1 w values).
  double phase_at(const PrefixPath& path, int j) const;

  // Weight snapshot and restore, for branch-and-backtrack enumeration over
  // directions sharing a suffix.
  const std::vector<std::complex<double>>& weights() const { return w_; }
  void set_weights(const std::vector<std::complex<double>>& w) { w_ = w; }

 private:
  const VectorSet& B_;
  double eta_;
  std::vector<std::complex<double>> w_;
};

}  // namespace ipac
