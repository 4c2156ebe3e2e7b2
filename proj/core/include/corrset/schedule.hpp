#ifndef CORRSET_SCHEDULE_HPP
#define CORRSET_SCHEDULE_HPP

#include <memory>
#include <vector>

#include "corrset/measure.hpp"
#include "corrset/numbers.hpp"
#include "corrset/synthesis.hpp"

namespace corrset {

// Stage j works at order k_j = j and accuracy eps_j = 1/j. Block lengths are
// the least values satisfying
//   (i)   L_j >= R_j
//   (ii)  R_{j+1} / L_j < 1/j
//   (iii) L_j / (L_1 + ... + L_j) > 1 - 1/j
// which forces the look-ahead approximant j+1 before L_j can be fixed.
struct Stage {
  int j = 0;
  Rat eps;
  Approximant approximant;
  Int R;  // re-entry threshold of the stage approximant
  Int L;  // chosen block length
  Int S;  // cumulative length L_1 + ... + L_j
};

class Schedule {
 public:
  explicit Schedule(ShiftMeasure nu, SynthesisOptions opts = {});

  // build stages 1..j (constructs approximants through j+1)
  void ensure_stages(int j);
  // extend until S_j >= bits (at most max_stages stages)
  void ensure_coverage(const Int& bits, int max_stages);

  int built_stages() const { return static_cast<int>(stages_.size()); }
  const Stage& stage(int j) const;            // 1-based
  const Int& lookahead_R() const;              // R_{built+1}
  const ShiftMeasure& measure() const { return nu_; }
  const SynthesisOptions& options() const { return opts_; }

 private:
  const Approximant& approximant(int j);  // 1-based, builds on demand

  ShiftMeasure nu_;
  SynthesisOptions opts_;
  std::vector<Approximant> approximants_;  // index j-1 = stage-j approximant
  std::vector<Stage> stages_;
};

Schedule build_schedule(const ShiftMeasure& nu, int stages,
                        const SynthesisOptions& opts = {});

// The minimal admissible block lengths for thresholds R_1, ..., R_{m+1}
// (conditions re-asserted after the choice). Returns L_1, ..., L_m.
std::vector<Int> choose_block_lengths(const std::vector<Int>& thresholds);

// k(N): the stage whose boundary was passed last, with the remainder
// N = S_k + L. k = 0 with L = N when N < S_1. Requires N <= S_built.
struct StagePoint {
  int k = 0;
  Int remainder;
};
StagePoint stage_of(const Int& N, const Schedule& sched);
// same over explicit cumulative boundaries S_1 < S_2 < ...
StagePoint stage_of(const Int& N, const std::vector<Int>& boundaries);

}  // namespace corrset

#endif
