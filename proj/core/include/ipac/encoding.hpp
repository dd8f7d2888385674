#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipac/domain.hpp"
#include "ipac/fourier.hpp"

namespace ipac {

// --- budgets ----------------------------------------------------------------

// Code-length parameters. kappa and tau are derived from lambda by the entropy
// solver, beta from the set size.
struct Budget {
  double beta = 0.0;
  double lambda = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
};

// Requires lambda in (1/n, 1].
Budget make_budget(const VectorSet& B, double lambda);

// max(0, floor(n(beta - 3 lambda))); the raw value can go negative, in which
// case the member codec's hypothesis is unsatisfiable and censuses flag it.
int member_code_length(int n, const Budget& b);

// floor(n(1 - beta + 3 lambda)); always holds every off-active coordinate.
int direction_code_length(int n, const Budget& b);

// floor(tau n), the strong-set capacity.
int strong_capacity(int n, const Budget& b);

// floor(n / log2(1/kappa)), the sparse-set capacity.
int sparse_capacity(int n, const Budget& b);

// |sin(2 eta)| < 1e-12; the strong threshold collapses there and the
// direction codec rejects.
bool degenerate_angle(double eta);

// --- codewords --------------------------------------------------------------

// Member codeword: q holds y's signs on its active set in ascending index
// order, padded with '+' to member_code_length; S lists the coordinates where
// y takes the strictly rarer conditional value; active_count is q's true
// length.
struct YCodeword {
  std::string q;
  std::vector<int> S;
  int active_count = 0;
};

// Direction codeword: q holds x's signs off the active set of y in ascending
// index order, padded with '+' to direction_code_length; G lists the strong
// coordinates; r holds x's signs on G in descending index order, padded with
// '+' to strong_capacity; off_count is q's true length.
struct XCodeword {
  std::string q;
  std::vector<int> G;
  std::string r;
  int off_count = 0;
};

// --- member codec -----------------------------------------------------------

// Requires |active(y)| <= member_code_length (HypothesisFailed otherwise) and
// y in B. decode_member inverts exactly.
YCodeword encode_member(const VectorSet& B, std::uint64_t y, const Budget& b);

// Rebuilds y coordinate by coordinate: active coordinates read q, the rest
// take the rarer conditional value when listed in S and the likelier one
// otherwise. Undecodable when a step is ambiguous or the prefix leaves B.
std::uint64_t decode_member(const VectorSet& B, const YCodeword& code, const Budget& b);

// --- direction codec --------------------------------------------------------

// Requires |active(y)| > n(beta - 3 lambda), |strong(x,y)| <= strong_capacity
// (HypothesisFailed otherwise), x with ±1 entries, and a nondegenerate angle.
XCodeword encode_direction(const VectorSet& B, std::uint64_t y, const Direction& x, double eta,
                           const Budget& b);

// Rebuilds x in descending coordinate order: off-active coordinates read q
// (from its tail), strong coordinates read r, and the rest take the unique
// sign with sin^2(phi_j + x_j eta) strictly below the strong threshold, phi_j
// recomputed from the already-decoded suffix.
Direction decode_direction(const VectorSet& B, std::uint64_t y, const XCodeword& code,
                           double eta, const Budget& b);

// --- censuses ---------------------------------------------------------------

struct CensusBound {
  std::int64_t count = 0;
  double bound = 0.0;       // the target comparison value
  BigInt codeword_space;    // exact size of the codeword space
  bool vacuous = false;
};

// count = #{y in B : |active(y)| <= member_code_length}, bound = |B| 2^{-2 lambda n},
// codeword_space = 2^t * sum_{k <= sparse_capacity} C(n,k). vacuous when
// n(beta - 3 lambda) < 0.
CensusBound small_active_census(const VectorSet& B, const Budget& b);

// count = #{x in {±1}^n : |strong(x,y)| <= strong_capacity}, bound =
// 2^{n(1-beta+4lambda)}, codeword_space = 2^t * sum_{k <= s} C(n,k) * 2^s.
// Requires |active(y)| > n(beta - 3 lambda) and 2^n <= max_directions.
// A degenerate angle is reported vacuous instead of rejected.
CensusBound direction_degree_census(const VectorSet& B, std::uint64_t y, double eta,
                                    const Budget& b,
                                    std::int64_t max_directions = std::int64_t{1} << 24);

// --- serialization ----------------------------------------------------------

// "q=<signs>;S=<comma indices>;m=<count>", indices 0-based.
std::string render_y_codeword(const YCodeword& code);
YCodeword parse_y_codeword(const std::string& text);

// "q=<signs>;G=<comma indices>;r=<signs>;m=<count>", indices 0-based.
std::string render_x_codeword(const XCodeword& code);
XCodeword parse_x_codeword(const std::string& text);

}  // namespace ipac
