#ifndef CORRSET_RECLAB_HPP
#define CORRSET_RECLAB_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrset/cylinder.hpp"
#include "corrset/measure.hpp"
#include "corrset/numbers.hpp"
#include "corrset/synthesis.hpp"
#include "corrset/word.hpp"

namespace corrset {

// A set R of candidate return times with a bounded enumerator.
class ShiftSet {
 public:
  enum class Kind { squares, multiples, polynomial, explicit_list };

  static ShiftSet squares();
  static ShiftSet multiples(std::uint64_t m);
  // p(n) = coeffs[0] + coeffs[1] n + ...; evaluated at n = 0, 1, 2, ...;
  // positive values collected. Leading coefficient must be positive.
  static ShiftSet polynomial(std::vector<std::int64_t> coeffs);
  static ShiftSet explicit_list(std::vector<std::uint64_t> values);

  // increasing nonzero elements of R within [1, r_max]
  std::vector<std::uint64_t> enumerate(std::uint64_t r_max) const;
  Kind kind() const { return kind_; }
  std::string describe() const;

 private:
  ShiftSet() = default;
  Kind kind_ = Kind::squares;
  std::uint64_t m_ = 0;
  std::vector<std::int64_t> coeffs_;
  std::vector<std::uint64_t> values_;
};

// The default distinguished set B = [w_0 = 1].
Cylinder default_target();

// A bounded search outcome: absence of a witness within [1, r_max] is a
// verdict about the searched range, never a disproof.
struct WitnessResult {
  std::optional<std::uint64_t> witness;
  std::uint64_t searched_up_to = 0;
};

// least r in R with nu(A cap sigma^-r A) > 0
WitnessResult recurrence_witness(const ShiftMeasure& nu, const ShiftSet& R,
                                 std::uint64_t r_max,
                                 const Cylinder& target = default_target());

// least r in R with nu(A cap sigma^-r A) > nu(A)^2 - eps
WitnessResult nice_recurrence_witness(const ShiftMeasure& nu, const ShiftSet& R,
                                      const Rat& eps, std::uint64_t r_max,
                                      const Cylinder& target = default_target());

// finite-N surrogate on the set side: least r in R with
// density_N(E cap (E-r)) > density_N(E)^2 - eps, E given by its indicator
// prefix w (requires |w| >= N + r_max)
WitnessResult nice_intersectivity_witness(const Word& w, const ShiftSet& R,
                                          const Rat& eps, std::uint64_t r_max,
                                          std::uint64_t N);

// all n in [1, n_max] with nu(A cap sigma^-n A cap sigma^-2n A) > nu(A)^3 - eps
std::vector<std::uint64_t> r3_set(const ShiftMeasure& nu, const Rat& eps,
                                  std::uint64_t n_max,
                                  const Cylinder& target = default_target());

// Measure-side and set-side witness searches on the same system: the set E is
// built from the measure's generic stream, and the per-r gaps between exact
// correlations and finite-N densities are tabulated.
struct TransferRow {
  std::uint64_t r = 0;
  Prob exact_corr;
  Rat empirical_density;
  Prob gap;
};

struct TransferReport {
  WitnessResult measure_side;
  WitnessResult set_side;
  std::vector<TransferRow> rows;
  Rat eps;
  std::uint64_t r_max = 0;
  std::uint64_t N = 0;
  int stage = 0;  // k(N) of the constructed prefix
  bool witnesses_agree = false;
  bool gaps_below_half_eps = false;
};

TransferReport transfer_experiment(const ShiftMeasure& nu, const ShiftSet& R,
                                   const Rat& eps, std::uint64_t r_max,
                                   std::uint64_t N,
                                   const SynthesisOptions& opts = {});

}  // namespace corrset

#endif
