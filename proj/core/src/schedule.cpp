#include "corrset/schedule.hpp"

#include "corrset/errors.hpp"

namespace corrset {

namespace {

void assert_conditions(int j, const Int& R_j, const Int& R_next, const Int& L_j,
                       const Int& S_prev, const Int& S_j) {
  if (!(L_j >= R_j))
    throw InternalError("schedule: condition (i) failed at stage " + std::to_string(j));
  if (!(Int(j) * R_next < L_j))
    throw InternalError("schedule: condition (ii) failed at stage " + std::to_string(j));
  if (!(Int(j) * L_j > Int(j - 1) * S_j))
    throw InternalError("schedule: condition (iii) failed at stage " + std::to_string(j));
  (void)S_prev;
}

}  // namespace

std::vector<Int> choose_block_lengths(const std::vector<Int>& thresholds) {
  if (thresholds.size() < 2)
    throw ValidationError("choose_block_lengths: need R_1..R_{m+1}");
  std::vector<Int> L;
  Int S = 0;
  for (std::size_t i = 0; i + 1 < thresholds.size(); ++i) {
    int j = static_cast<int>(i) + 1;
    Int candidate = thresholds[i];
    Int from_ii = Int(j) * thresholds[i + 1] + 1;
    if (from_ii > candidate) candidate = from_ii;
    Int from_iii = Int(j - 1) * S + 1;
    if (from_iii > candidate) candidate = from_iii;
    Int S_next = S + candidate;
    assert_conditions(j, thresholds[i], thresholds[i + 1], candidate, S, S_next);
    L.push_back(candidate);
    S = S_next;
  }
  return L;
}

Schedule::Schedule(ShiftMeasure nu, SynthesisOptions opts)
    : nu_(std::move(nu)), opts_(std::move(opts)) {}

const Approximant& Schedule::approximant(int j) {
  while (static_cast<int>(approximants_.size()) < j) {
    int next = static_cast<int>(approximants_.size()) + 1;
    approximants_.push_back(
        periodic_approximant(nu_, next, Rat(1, next), opts_));
  }
  return approximants_[static_cast<std::size_t>(j) - 1];
}

void Schedule::ensure_stages(int target) {
  while (built_stages() < target) {
    int j = built_stages() + 1;
    approximant(j + 1);  // look-ahead first: building may reallocate the cache
    const Approximant& ap = approximant(j);
    Int R_next = approximants_[static_cast<std::size_t>(j)].r0;
    Int S_prev = j == 1 ? Int(0) : stages_.back().S;
    Int candidate = ap.r0;
    Int from_ii = Int(j) * R_next + 1;
    if (from_ii > candidate) candidate = from_ii;
    Int from_iii = Int(j - 1) * S_prev + 1;
    if (from_iii > candidate) candidate = from_iii;
    Int S_j = S_prev + candidate;
    assert_conditions(j, ap.r0, R_next, candidate, S_prev, S_j);
    Stage st;
    st.j = j;
    st.eps = Rat(1, j);
    st.approximant = ap;
    st.R = ap.r0;
    st.L = candidate;
    st.S = S_j;
    stages_.push_back(std::move(st));
  }
}

void Schedule::ensure_coverage(const Int& bits, int max_stages) {
  while (built_stages() == 0 || stages_.back().S < bits) {
    if (built_stages() >= max_stages)
      throw ResourceError("schedule: stage budget (" + std::to_string(max_stages) +
                          ") exhausted before covering " + bits.str() + " bits");
    ensure_stages(built_stages() + 1);
  }
}

const Stage& Schedule::stage(int j) const {
  if (j < 1 || j > built_stages())
    throw ValidationError("schedule: stage " + std::to_string(j) + " not built");
  return stages_[static_cast<std::size_t>(j) - 1];
}

const Int& Schedule::lookahead_R() const {
  if (approximants_.size() <= stages_.size())
    throw InternalError("schedule: look-ahead approximant missing");
  return approximants_[stages_.size()].r0;
}

Schedule build_schedule(const ShiftMeasure& nu, int stages,
                        const SynthesisOptions& opts) {
  if (stages < 1) throw ValidationError("build_schedule: stages must be >= 1");
  Schedule s(nu, opts);
  s.ensure_stages(stages);
  return s;
}

StagePoint stage_of(const Int& N, const std::vector<Int>& boundaries) {
  if (N < 0) throw ValidationError("stage_of: N must be nonnegative");
  if (boundaries.empty() || N > boundaries.back())
    throw ValidationError("stage_of: N beyond built schedule");
  StagePoint p;
  p.k = 0;
  p.remainder = N;
  for (std::size_t i = 0; i < boundaries.size() && boundaries[i] <= N; ++i) {
    p.k = static_cast<int>(i) + 1;
    p.remainder = N - boundaries[i];
  }
  return p;
}

StagePoint stage_of(const Int& N, const Schedule& sched) {
  std::vector<Int> boundaries;
  boundaries.reserve(static_cast<std::size_t>(sched.built_stages()));
  for (int j = 1; j <= sched.built_stages(); ++j) boundaries.push_back(sched.stage(j).S);
  return stage_of(N, boundaries);
}

}  // namespace corrset
