#ifndef CORRSET_SPECTRUM_HPP
#define CORRSET_SPECTRUM_HPP

#include <cstdint>
#include <vector>

#include "corrset/measure.hpp"
#include "corrset/numbers.hpp"
#include "corrset/word.hpp"

namespace corrset {

// The order-k marginal of a rational measure as integer numerators over one
// common denominator: num[b] / denom = nu(block b), indexed by lexicographic
// block id. Widths are guarded; ResourceError when 256-bit numerators would
// overflow.
struct BlockSpectrum {
  int k = 0;
  Wide denom = 1;
  std::vector<Wide> num;
};

BlockSpectrum block_spectrum(const ShiftMeasure& nu, int k);

// Same marginal in configured-precision reals; works for every variant and is
// the only spectrum a rotation coding admits.
std::vector<Real> block_spectrum_real(const ShiftMeasure& nu, int k);

// max over cylinders C with positions inside {0..k-1} of
// |sum_{B matches C} (a[B]/ta - b[B]/tb)|.
//
// For k <= exact_max_k the true maximum is computed by folding the 3^k
// cylinder sums; beyond that a sound upper bound is returned instead
// (half the l1 distance of the block vectors, which dominates every
// cylinder sum), with exact_max = false.
struct Deviation {
  Rat value;
  bool exact_max = true;
  Rat max_block;  // max over fully specified cylinders only
};

Deviation block_deviation(const std::vector<std::int64_t>& a, std::int64_t ta,
                          const std::vector<std::int64_t>& b, std::int64_t tb,
                          int k, int exact_max_k);

Deviation block_deviation(const std::vector<std::int64_t>& counts, std::int64_t total,
                          const BlockSpectrum& target, int exact_max_k);

struct DeviationReal {
  Real value;
  bool exact_max = true;
  Real max_block;
};

DeviationReal block_deviation_real(const std::vector<std::int64_t>& counts,
                                   std::int64_t total, const std::vector<Real>& target,
                                   int exact_max_k);

// Default cutoff for the exact 3^k fold.
inline constexpr int kDefaultExactMaxOrder = 13;

Int wide_to_int(const Wide& x);
Wide int_to_wide(const Int& x);  // guarded

}  // namespace corrset

#endif
