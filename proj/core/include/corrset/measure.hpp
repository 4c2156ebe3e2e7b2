#ifndef CORRSET_MEASURE_HPP
#define CORRSET_MEASURE_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "corrset/cylinder.hpp"
#include "corrset/numbers.hpp"
#include "corrset/word.hpp"

namespace corrset {

class ShiftMeasure;

// i.i.d. coin with P(1) = p.
struct BernoulliData {
  Rat p;
};

// Stationary hidden-state chain read through a binary state labeling.
// The stationary vector is an input and verified exactly; it is never solved
// for.
struct LabeledMarkovData {
  std::vector<std::vector<Rat>> transition;  // row-stochastic, m x m
  std::vector<Rat> stationary;               // pi with pi P = pi
  std::vector<bool> labels;                  // state -> emitted bit
  std::size_t states() const { return stationary.size(); }
};

// Uniform mass on the shift orbit of period_word^infinity.
struct PeriodicOrbitData {
  Word period_word;
};

// Coding of the circle rotation x -> x + alpha by the arc A = [a, b).
// Worked in MPFR reals at `digits` decimal digits; a rational alpha silently
// yields a periodic measure (the caller owns irrationality).
struct RotationCodingData {
  Real alpha;
  Real a;
  Real b;
  unsigned digits = kDefaultRealDigits;
};

// Finite measure preserving system: points {0..m-1} with invariant weights,
// a permutation T, and a distinguished subset A, read through its coding.
struct FiniteMpsData {
  std::vector<Rat> weights;
  std::vector<std::size_t> permutation;  // x -> T(x)
  std::vector<bool> in_A;
  std::size_t points() const { return weights.size(); }
};

// Finite convex combination of ergodic components.
struct MixtureData {
  std::vector<Rat> weights;
  std::vector<ShiftMeasure> components;
};

// A finitely described shift-invariant measure on {0,1}^N with exact
// cylinder evaluation.
class ShiftMeasure {
 public:
  enum class Variant {
    bernoulli,
    labeled_markov,
    periodic_orbit,
    rotation_coding,
    finite_mps,
    mixture,
  };

  static ShiftMeasure bernoulli(Rat p);
  static ShiftMeasure labeled_markov(std::vector<std::vector<Rat>> transition,
                                     std::vector<Rat> stationary,
                                     std::vector<bool> labels);
  static ShiftMeasure periodic_orbit(Word period_word);
  static ShiftMeasure rotation_coding(Real alpha, Real a, Real b,
                                      unsigned digits = kDefaultRealDigits);
  static ShiftMeasure finite_mps(std::vector<Rat> weights,
                                 std::vector<std::size_t> permutation,
                                 std::vector<bool> in_A);
  static ShiftMeasure mixture(std::vector<Rat> weights,
                              std::vector<ShiftMeasure> components);

  Variant variant() const { return static_cast<Variant>(data_.index()); }
  bool is_rational() const;  // no rotation coding anywhere inside

  const BernoulliData& as_bernoulli() const { return std::get<BernoulliData>(data_); }
  const LabeledMarkovData& as_markov() const { return std::get<LabeledMarkovData>(data_); }
  const PeriodicOrbitData& as_orbit() const { return std::get<PeriodicOrbitData>(data_); }
  const RotationCodingData& as_rotation() const { return std::get<RotationCodingData>(data_); }
  const FiniteMpsData& as_mps() const { return std::get<FiniteMpsData>(data_); }
  const MixtureData& as_mixture() const { return std::get<MixtureData>(data_); }

  std::string describe() const;

 private:
  using Data = std::variant<BernoulliData, LabeledMarkovData, PeriodicOrbitData,
                            RotationCodingData, FiniteMpsData, MixtureData>;
  explicit ShiftMeasure(Data data) : data_(std::move(data)) {}
  Data data_;
};

// nu(C), exact rational except through rotation codings.
Prob cylinder_measure(const ShiftMeasure& nu, const Cylinder& c);

// nu([w_{n_1}=1, ..., w_{n_k}=1]) for the given shifts.
Prob correlation(const ShiftMeasure& nu, const std::vector<std::uint64_t>& shifts);

// The coding pushforward of a finite system / rotation system; validates the
// system description and returns the corresponding measure.
ShiftMeasure mps_pushforward(const FiniteMpsData& system);
ShiftMeasure mps_pushforward(const RotationCodingData& system);

// True when the variant is admissible as a Mixture component / as an
// ergodic_word target: Bernoulli, irreducible LabeledMarkov (aperiodic when
// `require_aperiodic`), PeriodicOrbit, RotationCoding.
bool is_ergodic_variant(const ShiftMeasure& nu, bool require_aperiodic);

struct ErgodicComponent {
  Rat weight;
  ShiftMeasure measure;
};

// Exact finite ergodic decomposition: mixtures split verbatim, finite systems
// split along permutation cycles into periodic orbits, reducible stationary
// chains split along closed communicating classes, ergodic variants return
// themselves with weight 1.
std::vector<ErgodicComponent> ergodic_decomposition(const ShiftMeasure& nu);

}  // namespace corrset

#endif
