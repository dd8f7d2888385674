#include "ipac/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <unordered_map>

#include "ipac/parallel.hpp"

namespace ipac {

namespace {

void check_dimension(const Direction& x, const VectorSet& B) {
  if (static_cast<int>(x.size()) != B.n)
    fail(Errc::dimension_mismatch, "direction length " + std::to_string(x.size()) +
                                       " vs set dimension " + std::to_string(B.n));
}

bool is_sign_direction(const Direction& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 1 || v == -1; });
}

std::int64_t abs_sum(const Direction& x) {
  std::int64_t s = 0;
  for (auto v : x) {
    if (std::llabs(v) > (std::int64_t{1} << 40))
      fail(Errc::overflow_risk, "direction entry magnitude " + std::to_string(v));
    s += std::llabs(v);
  }
  return s;
}

// Exact comparison num/den > threshold for a threshold with small components.
struct ExactThreshold {
  std::int64_t num, den;

  explicit ExactThreshold(const Rational& t) {
    const BigInt bn = boost::multiprecision::numerator(t);
    const BigInt bd = boost::multiprecision::denominator(t);
    const BigInt lim = BigInt{1} << 62;
    if (bn >= lim || bn <= -lim || bd >= lim)
      fail(Errc::overflow_risk, "census threshold components exceed 62 bits");
    num = bn.convert_to<std::int64_t>();
    den = bd.convert_to<std::int64_t>();
  }

  bool exceeded_by(std::int64_t count, std::int64_t total) const {
    return static_cast<__int128>(count) * den > static_cast<__int128>(num) * total;
  }
};

}  // namespace

IntegerDistribution inner_product_distribution(const Direction& x, const VectorSet& B) {
  check_dimension(x, B);
  std::map<std::int64_t, BigInt> counts;
  if (is_sign_direction(x)) {
    const std::uint64_t xw = pack_signs(std::vector<int>(x.begin(), x.end()));
    const int n = B.n;
    for (auto y : B.members) ++counts[n - 2 * std::popcount(xw ^ y)];
  } else {
    for (auto y : B.members) {
      std::int64_t ip = 0;
      for (int j = 0; j < B.n; ++j) ip += x[j] * sign_at(y, B.n, j);
      ++counts[ip];
    }
  }
  return IntegerDistribution::from_counts(counts, BigInt(B.size()));
}

Concentration concentration_probability(const Direction& x, const VectorSet& B) {
  auto [value, argmax] = inner_product_distribution(x, B).max_mass();
  return {value, argmax};
}

IntegerDistribution cube_sum_distribution(const Direction& weights,
                                          const DistributionLimits& limits) {
  const int n = static_cast<int>(weights.size());
  if (n < 1) fail(Errc::invalid_dimension, "empty weight vector");
  const std::int64_t M = abs_sum(weights);
  if (2 * M + 1 > limits.max_support)
    fail(Errc::overflow_risk, "support extent " + std::to_string(2 * M + 1) +
                                  " exceeds limit " + std::to_string(limits.max_support));
  // counts[k + M] = number of sign patterns with sum k
  std::vector<BigInt> counts(static_cast<std::size_t>(2 * M + 1));
  counts[static_cast<std::size_t>(M)] = 1;
  std::int64_t reach = 0;  // current max |sum|
  for (int j = 0; j < n; ++j) {
    const std::int64_t w = std::llabs(weights[j]);
    std::vector<BigInt> next(counts.size());
    for (std::int64_t k = -reach; k <= reach; ++k) {
      const BigInt& c = counts[static_cast<std::size_t>(k + M)];
      if (c == 0) continue;
      next[static_cast<std::size_t>(k + w + M)] += c;
      next[static_cast<std::size_t>(k - w + M)] += c;
    }
    counts.swap(next);
    reach += w;
  }
  std::map<std::int64_t, BigInt> out;
  for (std::int64_t k = -reach; k <= reach; ++k) {
    const BigInt& c = counts[static_cast<std::size_t>(k + M)];
    if (c != 0) out[k] = c;
  }
  return IntegerDistribution::from_counts(out, BigInt{1} << n);
}

Rational interval_mass(const VectorSet& A, const VectorSet& B, double c) {
  if (A.n != B.n)
    fail(Errc::dimension_mismatch, "direction-set dimension " + std::to_string(A.n) +
                                       " vs set dimension " + std::to_string(B.n));
  if (c < 0) fail(Errc::domain_error, "negative interval radius");
  const int n = A.n;
  const double limit = c * c * n;
  // |k| <= c*sqrt(n) tested as k^2 <= c^2 n
  std::int64_t hits = 0;
  for (auto x : A.members)
    for (auto y : B.members) {
      const std::int64_t k = n - 2 * std::popcount(x ^ y);
      if (static_cast<double>(k) * static_cast<double>(k) <= limit) ++hits;
    }
  return Rational(BigInt(hits), BigInt(A.size()) * BigInt(B.size()));
}

namespace {

// Histogram with an exact running maximum bucket count. The count-of-counts
// table lets the max track single-step updates without rescanning.
class DenseHist {
 public:
  DenseHist(std::int64_t extent, std::size_t max_count)
      : offset_(extent), buckets_(static_cast<std::size_t>(2 * extent + 1)),
        coc_(max_count + 2) {}

  void add(std::int64_t k) {
    auto& b = buckets_[static_cast<std::size_t>(k + offset_)];
    ++b;
    --coc_[static_cast<std::size_t>(b - 1)];
    ++coc_[static_cast<std::size_t>(b)];
    if (b > cmax_) cmax_ = b;
  }
  void remove(std::int64_t k) {
    auto& b = buckets_[static_cast<std::size_t>(k + offset_)];
    --b;
    --coc_[static_cast<std::size_t>(b + 1)];
    ++coc_[static_cast<std::size_t>(b)];
    while (cmax_ > 0 && coc_[static_cast<std::size_t>(cmax_)] == 0) --cmax_;
  }
  std::int64_t max_count() const { return cmax_; }

  std::pair<std::int64_t, std::int64_t> max_and_argmax() const {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(buckets_.size()); ++i)
      if (buckets_[static_cast<std::size_t>(i)] == cmax_) return {cmax_, i - offset_};
    fail(Errc::bad_entry, "empty histogram");
  }

 private:
  std::int64_t offset_;
  std::vector<std::int64_t> buckets_;
  std::vector<std::int64_t> coc_{};  // coc_[c] = buckets holding exactly c
  std::int64_t cmax_ = 0;
};

class SparseHist {
 public:
  SparseHist(std::int64_t, std::size_t max_count) : coc_(max_count + 2) {}

  void add(std::int64_t k) {
    auto& b = buckets_[k];
    ++b;
    --coc_[static_cast<std::size_t>(b - 1)];
    ++coc_[static_cast<std::size_t>(b)];
    if (b > cmax_) cmax_ = b;
  }
  void remove(std::int64_t k) {
    auto it = buckets_.find(k);
    auto& b = it->second;
    --b;
    --coc_[static_cast<std::size_t>(b + 1)];
    ++coc_[static_cast<std::size_t>(b)];
    if (b == 0) buckets_.erase(it);
    while (cmax_ > 0 && coc_[static_cast<std::size_t>(cmax_)] == 0) --cmax_;
  }
  std::int64_t max_count() const { return cmax_; }

  std::pair<std::int64_t, std::int64_t> max_and_argmax() const {
    std::int64_t arg = 0;
    bool found = false;
    for (const auto& [k, c] : buckets_)
      if (c == cmax_ && (!found || k < arg)) {
        arg = k;
        found = true;
      }
    if (!found) fail(Errc::bad_entry, "empty histogram");
    return {cmax_, arg};
  }

 private:
  std::unordered_map<std::int64_t, std::int64_t> buckets_;
  std::vector<std::int64_t> coc_;
  std::int64_t cmax_ = 0;
};

constexpr std::int64_t kDenseExtentLimit = std::int64_t{1} << 22;

// Walks directions i in [begin, end) of the two-cube in Gray-code order.
template <class Hist>
void gray_walk(const TwoCube& A, const VectorSet& B, const ExactThreshold& thr,
               bool per_direction, std::uint64_t begin, std::uint64_t end,
               std::int64_t extent, std::uint64_t& exceed, std::vector<CensusEntry>* entries) {
  const int n = A.n();
  const auto size = static_cast<std::int64_t>(B.size());
  Hist hist(extent, B.size());
  std::vector<std::int64_t> vals(B.size());
  std::uint64_t g = begin ^ (begin >> 1);
  for (std::size_t m = 0; m < B.size(); ++m) {
    std::int64_t ip = 0;
    for (int j = 0; j < n; ++j) {
      const std::int64_t xj = (g >> j) & 1u ? A.pairs[j].first : A.pairs[j].second;
      ip += xj * sign_at(B.members[m], n, j);
    }
    vals[m] = ip;
    hist.add(ip);
  }
  for (std::uint64_t i = begin; i < end; ++i) {
    if (per_direction) {
      auto [cnt, arg] = hist.max_and_argmax();
      (*entries)[g] = CensusEntry{g, cnt, size, arg};
      if (thr.exceeded_by(cnt, size)) ++exceed;
    } else if (thr.exceeded_by(hist.max_count(), size)) {
      ++exceed;
    }
    if (i + 1 == end) break;
    const int j = std::countr_zero(i + 1);
    g ^= std::uint64_t{1} << j;
    const std::int64_t delta =
        (g >> j) & 1u ? A.differences[j] : -A.differences[j];
    for (std::size_t m = 0; m < B.size(); ++m) {
      const std::int64_t nv = vals[m] + delta * sign_at(B.members[m], n, j);
      hist.remove(vals[m]);
      hist.add(nv);
      vals[m] = nv;
    }
  }
}

}  // namespace

CensusRecord direction_census(const TwoCube& A, const VectorSet& B, const Rational& threshold,
                              const CensusOptions& options) {
  if (A.n() != B.n)
    fail(Errc::dimension_mismatch, "two-cube dimension " + std::to_string(A.n()) +
                                       " vs set dimension " + std::to_string(B.n));
  const int n = A.n();
  if (n >= 63 || (std::uint64_t{1} << n) > options.budget)
    fail(Errc::too_large, "2^" + std::to_string(n) + " directions exceed budget " +
                              std::to_string(options.budget));
  std::int64_t extent = 0;
  for (const auto& [u, v] : A.pairs) extent += std::max(std::llabs(u), std::llabs(v));
  const ExactThreshold thr(threshold);

  CensusRecord record;
  record.total_directions = std::uint64_t{1} << n;
  record.threshold = threshold;
  if (options.per_direction) record.per_direction.resize(record.total_directions);

  const int workers = resolve_workers(options.workers);
  std::vector<std::uint64_t> exceed(static_cast<std::size_t>(workers), 0);
  auto* entries = options.per_direction ? &record.per_direction : nullptr;
  run_blocks(record.total_directions, workers,
             [&](int b, std::uint64_t lo, std::uint64_t hi) {
               if (extent <= kDenseExtentLimit)
                 gray_walk<DenseHist>(A, B, thr, options.per_direction, lo, hi, extent,
                                      exceed[static_cast<std::size_t>(b)], entries);
               else
                 gray_walk<SparseHist>(A, B, thr, options.per_direction, lo, hi, extent,
                                       exceed[static_cast<std::size_t>(b)], entries);
             });
  for (auto e : exceed) record.exceed_count += e;
  return record;
}

CensusRecord direction_census(const VectorSet& A, const VectorSet& B, const Rational& threshold,
                              const CensusOptions& options) {
  if (A.n != B.n)
    fail(Errc::dimension_mismatch, "direction-set dimension " + std::to_string(A.n) +
                                       " vs set dimension " + std::to_string(B.n));
  if (A.size() > options.budget)
    fail(Errc::too_large, std::to_string(A.size()) + " directions exceed budget " +
                              std::to_string(options.budget));
  const int n = A.n;
  const auto size = static_cast<std::int64_t>(B.size());
  const ExactThreshold thr(threshold);

  CensusRecord record;
  record.total_directions = A.size();
  record.threshold = threshold;
  if (options.per_direction) record.per_direction.resize(record.total_directions);

  const int workers = resolve_workers(options.workers);
  std::vector<std::uint64_t> exceed(static_cast<std::size_t>(workers), 0);
  run_blocks(record.total_directions, workers,
             [&](int b, std::uint64_t lo, std::uint64_t hi) {
               std::vector<std::int64_t> buckets(static_cast<std::size_t>(n + 1));
               for (std::uint64_t i = lo; i < hi; ++i) {
                 std::fill(buckets.begin(), buckets.end(), 0);
                 const std::uint64_t x = A.members[i];
                 for (auto y : B.members)
                   ++buckets[static_cast<std::size_t>(n - std::popcount(x ^ y))];
                 // bucket k holds inner product 2k - n
                 std::int64_t cnt = 0, arg = 0;
                 for (std::size_t k = 0; k < buckets.size(); ++k)
                   if (buckets[k] > cnt) {
                     cnt = buckets[k];
                     arg = 2 * static_cast<std::int64_t>(k) - n;
                   }
                 if (options.per_direction)
                   record.per_direction[i] = CensusEntry{i, cnt, size, arg};
                 if (thr.exceeded_by(cnt, size)) ++exceed[static_cast<std::size_t>(b)];
               }
             });
  for (auto e : exceed) record.exceed_count += e;
  return record;
}

void write_census_csv(std::ostream& out, const CensusRecord& record) {
  out << "direction_index,concentration_num,concentration_den,argmax_k\n";
  for (const auto& e : record.per_direction)
    out << e.direction_index << ',' << e.concentration_num << ',' << e.concentration_den << ','
        << e.argmax_k << '\n';
}

}  // namespace ipac
