#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "ipac/domain.hpp"

namespace ipac {

struct DistributionLimits {
  // Cap on 2*sum|x_j|+1, the worst-case support extent of a signed sum.
  std::int64_t max_support = std::int64_t{1} << 24;
};

// pmf of <x, Y> with Y uniform on B; denominators divide |B|.
IntegerDistribution inner_product_distribution(const Direction& x, const VectorSet& B);

struct Concentration {
  Rational value;
  std::int64_t argmax;  // smallest maximizing point
};

Concentration concentration_probability(const Direction& x, const VectorSet& B);

// pmf of sum_j x_j eps_j with eps uniform on {-1,+1}^n, computed by
// coordinate convolution (never by 2^n enumeration).
IntegerDistribution cube_sum_distribution(const Direction& weights,
                                          const DistributionLimits& limits = {});

// Pr[|<X,Y>| <= c*sqrt(n)] with X uniform on A, Y uniform on B, independent.
Rational interval_mass(const VectorSet& A, const VectorSet& B, double c);

struct CensusOptions {
  bool per_direction = false;
  std::uint64_t budget = std::uint64_t{1} << 24;  // max directions enumerated
  int workers = 0;                                // 0 = hardware concurrency
};

struct CensusEntry {
  std::uint64_t direction_index;
  std::int64_t concentration_num;
  std::int64_t concentration_den;
  std::int64_t argmax_k;
};

struct CensusRecord {
  std::uint64_t total_directions = 0;
  std::uint64_t exceed_count = 0;  // directions with concentration > threshold
  Rational threshold;
  std::vector<CensusEntry> per_direction;  // filled when requested
};

// Enumerates every direction of A in Gray-code order, maintaining the
// inner-product histogram against B with O(|B|) work per step.
CensusRecord direction_census(const TwoCube& A, const VectorSet& B, const Rational& threshold,
                              const CensusOptions& options = {});

// Same record over an explicit list of sign directions.
CensusRecord direction_census(const VectorSet& A, const VectorSet& B, const Rational& threshold,
                              const CensusOptions& options = {});

void write_census_csv(std::ostream& out, const CensusRecord& record);

}  // namespace ipac
