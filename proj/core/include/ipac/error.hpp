#pragma once

#include <stdexcept>
#include <string>

namespace ipac {

// Failure conditions surfaced by the library. Coordinate-indexed conditions
// carry a 1-based index in Error::index (0 when not applicable).
enum class Errc {
  zero_difference,
  invalid_dimension,
  bad_entry,
  dimension_mismatch,
  not_in_set,
  overflow_risk,
  too_large,
  grid_too_coarse,
  bad_constant,
  domain_error,
  no_solution,
  hypothesis_failed,
  degenerate_angle,
  undecodable,
  infeasible_spec,
  unknown_suite,
  parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string what, long index = 0)
      : std::runtime_error(std::move(what)), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }
  long index() const noexcept { return index_; }

 private:
  Errc code_;
  long index_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what, long index = 0) {
  throw Error(code, std::string(errc_name(code)) + ": " + what, index);
}

}  // namespace ipac
