#ifndef CORRSET_REPORT_HPP
#define CORRSET_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "corrset/numbers.hpp"
#include "corrset/stream.hpp"

namespace corrset {

// One probe of the headline identity: empirical intersection density of the
// constructed set against the exact correlation, with the stage index k(N)
// so the O(1/k) envelope is visible.
struct ConvergenceRow {
  std::uint64_t N = 0;
  std::vector<std::uint64_t> shifts;
  Prob empirical;
  Prob exact;
  Prob abs_error;
  int stage = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

ConvergenceReport convergence_report(
    const ShiftMeasure& nu, BitStream& stream,
    const std::vector<std::vector<std::uint64_t>>& shift_tuples,
    const std::vector<std::uint64_t>& N_grid);

// columns: N, shifts, empirical, exact, abs_error, stage; shifts ';'-joined
std::string to_csv(const ConvergenceReport& report);

std::string join_shifts(const std::vector<std::uint64_t>& shifts);

}  // namespace corrset

#endif
