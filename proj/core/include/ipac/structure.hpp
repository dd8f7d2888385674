#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ipac/domain.hpp"
#include "ipac/polyconv.hpp"

namespace ipac {

// --- signed zero-sum counts -------------------------------------------------

// Number of (eps, j) in {±1}^{2 ell} x [n]^{2 ell} with sum eps_i d_{j_i} = 0,
// d the difference list of A. Constant coefficient of (sum_j z^{d_j} +
// z^{-d_j})^{2 ell}.
BigInt r_ell(const TwoCube& A, int ell, const ConvLimits& limits = {});

// r_1 .. r_ell_max in one iterated convolution pass.
std::vector<BigInt> r_ell_table(const TwoCube& A, int ell_max, const ConvLimits& limits = {});

// --- Sidon classification ---------------------------------------------------

enum class SidonClass { sidon, weak_sidon, neither };

struct SidonCounts {
  BigInt pair_count;    // ordered quadruples with s1 + s2 = s3 + s4
  BigInt signed_count;  // ordered sign-decorated quadruples, e1 s1 + e2 s2 = e3 s3 + e4 s4
  BigInt pair_target;   // 4 C(n,2) + n, the count a Sidon set attains exactly
  BigInt signed_limit;  // 100 n^2, the weak-Sidon ceiling
  SidonClass cls = SidonClass::neither;
};

const char* sidon_class_name(SidonClass c);

// Counts both solution kinds by squaring the sum polynomials; class is sidon
// when the pair count hits its target, else weak_sidon when the signed count
// stays under the ceiling.
SidonCounts sidon_classify(const std::vector<std::int64_t>& S);

// --- dispersion bound calculus ----------------------------------------------

// C^ell * r_ell(A) / n^{2 ell + 1/2} + exp(-n/C).
double halasz_R(const TwoCube& A, double C, int ell, const ConvLimits& limits = {});

// The same formula from a precomputed count.
double halasz_R_formula(const BigInt& r, int n, double C, int ell);

struct RMin {
  double value = 0.0;
  int ell = 0;  // minimizing ell in [1, ell_max]
};

// min over ell in [1, ell_max]; nonincreasing in ell_max.
RMin halasz_R_min(const TwoCube& A, double C, int ell_max, const ConvLimits& limits = {});

struct MuBound {
  double mu = 1.0;
  double nu = 1.0;       // witnessing grid point
  bool vacuous = false;  // true when every grid candidate reached 1 and mu was clamped
};

// 64 log-spaced points in [1e-6, 1].
std::vector<double> default_nu_grid();

// min over the grid of (3 exp(-nu n / C) + R / (50 sqrt(nu)))^{1/(1+nu)^2},
// clamped to 1 (the infimum over an empty candidate set).
MuBound mu_bound_from_R(double R, int n, double C, const std::vector<double>& nu_grid);

MuBound mu_bound(const TwoCube& A, double C, const std::vector<double>& nu_grid,
                 int ell_max, const ConvLimits& limits = {});

// --- entropy parameters -----------------------------------------------------

// Base-2 entropy, H(0) = H(1) = 0 by continuity.
double binary_entropy(double xi);

struct EntropyParameters {
  double lambda = 0.0;
  double kappa = 0.0;  // H(1/log2(1/kappa)) = lambda on the branch 1/log2(1/kappa) <= 1/2
  double tau = 0.0;    // tau + H(tau) = lambda on the increasing branch tau < 2/3
};

// Bisection on both branches; residuals below 1e-10.
EntropyParameters solve_parameters(double lambda);

// --- combined profile -------------------------------------------------------

struct StructureProfile {
  int n = 0;
  double C = 1.0;
  int ell_max = 0;
  std::vector<std::int64_t> differences;
  std::map<int, BigInt> r;          // ell -> r_ell
  std::map<int, double> R_values;   // ell -> R_{C,ell}
  RMin R_min;
  MuBound mu;
  SidonCounts sidon;  // classification of the difference list
  std::size_t nu_grid_size = 0;
};

StructureProfile structure_profile(const TwoCube& A, double C, int ell_max,
                                   const std::vector<double>& nu_grid = default_nu_grid(),
                                   const ConvLimits& limits = {});

// Counts as exact integer literals, real-valued bounds as decimal strings.
std::string structure_profile_json(const StructureProfile& p);

}  // namespace ipac
