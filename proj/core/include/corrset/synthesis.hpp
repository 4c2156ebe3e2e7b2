#ifndef CORRSET_SYNTHESIS_HPP
#define CORRSET_SYNTHESIS_HPP

#include <cstdint>
#include <vector>

#include "corrset/measure.hpp"
#include "corrset/numbers.hpp"
#include "corrset/spectrum.hpp"
#include "corrset/word.hpp"

namespace corrset {

struct SynthesisOptions {
  enum class Strategy { frequency_matched, sampled };

  // word-length budget for a single ergodic word; exceeding it without
  // certifying the requested bound is an error
  std::uint64_t max_word_bits = 1ull << 31;
  // orders up to this get the exact 3^k cylinder maximum as certificate;
  // larger orders report a sound upper bound instead
  int exact_certificate_order = kDefaultExactMaxOrder;
  Strategy strategy = Strategy::frequency_matched;
  std::uint64_t sample_seed = 0x7c0ffee5ll;  // fixed: runs stay bit-identical
};

struct ApproximantComponent {
  Rat alpha;               // exact decomposition weight
  std::uint64_t word_len;  // certified ergodic word length
  std::uint64_t block_len; // chosen block length n_i (multiple of word_len)
};

// One period of a certified periodic approximant: cyclic order-k statistics
// of x are within certificate < 4 eps / 5 of the target measure, and every
// point agreeing with x^infinity on [0,R) for R >= r0 stays within eps/5 of
// the periodic statistics.
struct Approximant {
  Word x;
  int k = 0;
  Rat eps;
  Int r0;
  Prob certificate;
  bool certificate_exact_max = true;
  std::vector<ApproximantComponent> components;

  std::uint64_t period() const { return x.size(); }
};

// A word w with |w| >= n_min whose cyclic order-k statistics are within eps
// of the ergodic measure nu, re-verified by direct counting before return.
Word ergodic_word(const ShiftMeasure& nu, int k, const Rat& eps,
                  std::uint64_t n_min, const SynthesisOptions& opts = {});

Approximant periodic_approximant(const ShiftMeasure& nu, int k, const Rat& eps,
                                 const SynthesisOptions& opts = {});

// Smallest re-entry threshold used by the construction:
// max(p, ceil(5 (k + p) / eps)). Windows still inside the agreed prefix err
// by at most k/R, period misalignment by at most p/R, so (k+p)/R < eps/5.
Int reentry_threshold(std::uint64_t p, int k, const Rat& eps);

// Balance-preserving integer rounding of the scaled order-k marginal
// n * spectrum: per-edge error < 1 and exact in-degree = out-degree at every
// de Bruijn vertex. Exposed for testing.
std::vector<std::int64_t> balanced_block_counts(const BlockSpectrum& spectrum,
                                                std::uint64_t n);

// Eulerian word of a balanced, connected de Bruijn multigraph given by
// per-block multiplicities; lexicographic edge preference. Exposed for
// testing.
Word eulerian_word(std::vector<std::int64_t> counts, int k);

}  // namespace corrset

#endif
