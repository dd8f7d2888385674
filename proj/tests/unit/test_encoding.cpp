#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "ipac/encoding.hpp"
#include "ipac/error.hpp"
#include "ipac/fourier.hpp"
#include "ipac/harness.hpp"

using namespace ipac;

namespace {

// One minority member against the full opposite halfspace.
VectorSet lopsided_set() {
  std::vector<std::uint64_t> words{0};  // ----
  for (std::uint64_t w = 0; w < 8; ++w) words.push_back(0b1000 | w);
  return make_vector_set_packed(4, words);
}

// Budgets in unit tests are handpicked structs, not solver output, so the
// rare-value branch is reachable at this scale.
Budget wide_budget() { return Budget{2.0, 0.1, 0.3, 0.75}; }

}  // namespace

TEST_CASE("budget lengths follow their formulas") {
  const Budget b = wide_budget();
  CHECK(member_code_length(4, b) == 6);  // floor(4 * 1.7)
  CHECK(direction_code_length(4, Budget{1.0, 0.1, 0.3, 0.75}) == 1);
  CHECK(strong_capacity(4, b) == 3);
  CHECK(sparse_capacity(4, b) == 2);  // floor(4 / log2(10/3))

  const Budget tight{0.25, 0.5, 0.3, 0.75};
  CHECK(member_code_length(4, tight) == 0);  // clamped from floor(-5)
  CHECK(direction_code_length(4, tight) == 9);

  CHECK_FALSE(degenerate_angle(0.7));
  CHECK(degenerate_angle(std::numbers::pi / 2));
  CHECK(degenerate_angle(0.0));
}

TEST_CASE("solver-backed budgets reject out-of-range lambda") {
  const VectorSet B = full_cube(4);
  CHECK_THROWS_AS((void)make_budget(B, 0.25), Error);  // 1/n boundary excluded
  CHECK_THROWS_AS((void)make_budget(B, 1.5), Error);
  const Budget b = make_budget(B, 0.5);
  CHECK(b.beta == 1.0);
  CHECK(b.lambda == 0.5);
  CHECK(b.kappa > 0.0);
  CHECK(b.kappa < 1.0);
  CHECK(b.tau > 0.0);
}

TEST_CASE("rare-value coordinates ride the side list") {
  const VectorSet B = lopsided_set();
  const Budget b = wide_budget();
  const auto y0 = B.members.front();  // ----

  const auto code = encode_member(B, y0, b);
  CHECK(code.active_count == 0);
  CHECK(code.S == std::vector<int>{0});
  CHECK(code.q == std::string(6, '+'));  // all padding
  CHECK(decode_member(B, code, b) == y0);

  // every member of the set round trips
  for (auto y : B.members) CHECK(decode_member(B, encode_member(B, y, b), b) == y);

  // the majority members never touch the side list
  for (std::size_t m = 1; m < B.size(); ++m) {
    const auto c = encode_member(B, B.members[m], b);
    CHECK(c.S.empty());
    CHECK(c.active_count == 3);
  }
}

TEST_CASE("dropping the side list decodes a different member") {
  const VectorSet B = lopsided_set();
  const Budget b = wide_budget();
  const auto y0 = B.members.front();
  auto code = encode_member(B, y0, b);
  code.S.clear();
  const auto decoded = decode_member(B, code, b);
  CHECK(decoded != y0);
  CHECK(B.contains(decoded));
}

TEST_CASE("corrupting an active sign decodes a different member") {
  const VectorSet B = lopsided_set();
  const Budget b = wide_budget();
  const auto y = B.members[3];
  auto code = encode_member(B, y, b);
  REQUIRE(code.active_count == 3);
  code.q[1] = code.q[1] == '+' ? '-' : '+';
  const auto decoded = decode_member(B, code, b);
  CHECK(decoded != y);
}

TEST_CASE("a side-list index into an empty branch is undecodable") {
  // members ---, +--, +-+, ++-, +++; below the minus root only --- survives
  const VectorSet B = make_vector_set_packed(3, {0b000, 0b100, 0b101, 0b110, 0b111});
  const Budget b{2.0, 0.1, 0.3, 0.75};
  YCodeword code;
  code.q = "";
  code.S = {1};
  code.active_count = 0;
  CHECK_THROWS_AS((void)decode_member(B, code, b), Error);
  try {
    (void)decode_member(B, code, b);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::undecodable);
  }
}

TEST_CASE("oversized active sets refuse the member codec") {
  const VectorSet B = full_cube(3);  // every split is even, every coordinate active
  const Budget b{0.25, 0.5, 0.3, 0.75};  // code length clamps to 0
  try {
    (void)encode_member(B, B.members[0], b);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::hypothesis_failed);
  }
}

TEST_CASE("full-cube directions are all strong and round trip through r") {
  const VectorSet B = full_cube(3);
  const Budget b{0.5, 0.2, 0.3, 1.0};  // strong capacity 3
  const double eta = 0.7;
  for (std::uint64_t w = 0; w < 8; ++w) {
    Direction x(3);
    for (int j = 0; j < 3; ++j) x[j] = (w >> j) & 1u ? 1 : -1;
    const auto code = encode_direction(B, B.members[2], x, eta, b);
    CHECK(code.G == std::vector<int>{0, 1, 2});
    CHECK(code.off_count == 0);
    CHECK(decode_direction(B, B.members[2], code, eta, b) == x);
  }
  const auto census = direction_degree_census(B, B.members[2], eta, b);
  CHECK(census.count == 8);
  CHECK_FALSE(census.vacuous);
  CHECK(BigInt(census.count) <= census.codeword_space);
}

TEST_CASE("strong capacity zero rejects every full-cube direction") {
  const VectorSet B = full_cube(3);
  const Budget b{0.5, 0.2, 0.3, 0.1};  // strong capacity 0
  const double eta = 0.7;
  try {
    (void)encode_direction(B, B.members[1], Direction{1, 1, 1}, eta, b);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::hypothesis_failed);
  }
  CHECK(direction_degree_census(B, B.members[1], eta, b).count == 0);
}

TEST_CASE("off-active signs decode from the tail of q") {
  // y0's prefix branch is a singleton, so no coordinate is active
  const VectorSet B = make_vector_set_packed(3, {0b000, 0b100, 0b101, 0b110, 0b111});
  const Budget b{0.5, 0.2, 0.3, 1.0};
  const auto y0 = B.members.front();
  const double eta = 0.7;
  for (std::uint64_t w = 0; w < 8; ++w) {
    Direction x(3);
    for (int j = 0; j < 3; ++j) x[j] = (w >> j) & 1u ? 1 : -1;
    const auto code = encode_direction(B, y0, x, eta, b);
    CHECK(code.off_count == 3);
    CHECK(code.G.empty());
    CHECK(decode_direction(B, y0, code, eta, b) == x);
  }
}

TEST_CASE("partially strong instances use the implicit branch") {
  // the 4-cube with two words removed keeps every coordinate active for ----
  std::vector<std::uint64_t> words;
  for (std::uint64_t w = 0; w < 16; ++w)
    if (w != 0b0011 && w != 0b0101) words.push_back(w);
  const VectorSet B = make_vector_set_packed(4, words);
  const Budget b{0.5, 0.2, 0.3, 1.0};
  const auto y0 = B.members.front();  // ----
  const auto prof = conditional_profile(B, y0, b.kappa);
  const double eta = 0.7;
  int implicit_used = 0;
  for (std::uint64_t w = 0; w < 16; ++w) {
    Direction x(4);
    for (int j = 0; j < 4; ++j) x[j] = (w >> j) & 1u ? 1 : -1;
    const auto code = encode_direction(B, y0, x, eta, b);
    if (code.G.size() < prof.active.size()) ++implicit_used;
    CHECK(decode_direction(B, y0, code, eta, b) == x);

    auto bad = code;
    if (!bad.G.empty()) {
      bad.r[0] = bad.r[0] == '+' ? '-' : '+';
      bool differs = false;
      try {
        differs = decode_direction(B, y0, bad, eta, b) != x;
      } catch (const Error& e) {
        CHECK(e.code() == Errc::undecodable);
        differs = true;
      }
      CHECK(differs);
    }
  }
  CHECK(implicit_used > 0);
}

TEST_CASE("degenerate angles are rejected up front") {
  const VectorSet B = full_cube(3);
  const Budget b{0.5, 0.2, 0.3, 1.0};
  CHECK_THROWS_AS((void)encode_direction(B, B.members[0], Direction{1, 1, 1},
                                         std::numbers::pi / 2, b),
                  Error);
  CHECK(direction_degree_census(B, B.members[0], std::numbers::pi / 2, b).vacuous);
}

TEST_CASE("member census counts the small-active members exactly") {
  const VectorSet B = lopsided_set();
  const Budget b{1.0, 0.3, 0.3, 0.75};  // code length floor(4 * 0.1) = 0
  const auto census = small_active_census(B, b);
  CHECK(census.count == 1);  // only ---- has an empty active set
  CHECK_FALSE(census.vacuous);
  CHECK(BigInt(census.count) <= census.codeword_space);

  const Budget infeasible{0.1, 0.3, 0.3, 0.75};  // beta - 3 lambda < 0
  CHECK(small_active_census(B, infeasible).vacuous);
}

TEST_CASE("codewords serialize to the fenced text form") {
  YCodeword y;
  y.q = "+-";
  y.S = {2, 5};
  y.active_count = 2;
  CHECK(render_y_codeword(y) == "q=+-;S=2,5;m=2");
  const auto yr = parse_y_codeword("q=+-;S=2,5;m=2");
  CHECK(yr.q == y.q);
  CHECK(yr.S == y.S);
  CHECK(yr.active_count == y.active_count);

  XCodeword x;
  x.q = "+";
  x.G = {1};
  x.r = "-";
  x.off_count = 1;
  CHECK(render_x_codeword(x) == "q=+;G=1;r=-;m=1");
  const auto xr = parse_x_codeword("q=+;G=1;r=-;m=1");
  CHECK(xr.q == x.q);
  CHECK(xr.G == x.G);
  CHECK(xr.r == x.r);
  CHECK(xr.off_count == x.off_count);

  // empty fields survive the trip
  const auto empty = parse_y_codeword("q=;S=;m=0");
  CHECK(empty.q.empty());
  CHECK(empty.S.empty());

  CHECK_THROWS_AS((void)parse_y_codeword("q=+-;S=2"), Error);
  CHECK_THROWS_AS((void)parse_y_codeword("q=+x;S=;m=0"), Error);
  CHECK_THROWS_AS((void)parse_y_codeword("q=;S=a;m=0"), Error);
  CHECK_THROWS_AS((void)parse_y_codeword("q=;S=;m=-2"), Error);
  CHECK_THROWS_AS((void)parse_x_codeword("q=;G=;r=;m=zero"), Error);
  CHECK_THROWS_AS((void)parse_x_codeword("s=;G=;r=;m=0"), Error);
}
