#include "corrset/report.hpp"

#include <algorithm>

#include "corrset/empirical.hpp"
#include "corrset/errors.hpp"
#include "corrset/measure.hpp"

namespace corrset {

ConvergenceReport convergence_report(
    const ShiftMeasure& nu, BitStream& stream,
    const std::vector<std::vector<std::uint64_t>>& shift_tuples,
    const std::vector<std::uint64_t>& N_grid) {
  if (shift_tuples.empty()) throw ValidationError("convergence_report: no shift tuples");
  if (N_grid.empty()) throw ValidationError("convergence_report: empty N grid");
  std::uint64_t max_N = *std::max_element(N_grid.begin(), N_grid.end());
  std::uint64_t max_shift = 0;
  for (const auto& t : shift_tuples) {
    if (t.empty()) throw ValidationError("convergence_report: empty shift tuple");
    max_shift = std::max(max_shift, *std::max_element(t.begin(), t.end()));
  }
  Word w = stream.prefix(max_N + max_shift);

  ConvergenceReport report;
  for (std::uint64_t N : N_grid) {
    StagePoint sp = stage_of(Int(N), stream.schedule());
    for (const auto& tuple : shift_tuples) {
      ConvergenceRow row;
      row.N = N;
      row.shifts = tuple;
      row.empirical = Prob(intersection_density(w, tuple, N));
      row.exact = correlation(nu, tuple);
      row.abs_error = (row.empirical - row.exact).abs();
      row.stage = sp.k;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string join_shifts(const std::vector<std::uint64_t>& shifts) {
  std::string s;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(shifts[i]);
  }
  return s;
}

std::string to_csv(const ConvergenceReport& report) {
  std::string out = "N,shifts,empirical,exact,abs_error,stage\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.N);
    out += ',';
    out += join_shifts(row.shifts);
    out += ',';
    out += row.empirical.str();
    out += ',';
    out += row.exact.str();
    out += ',';
    out += row.abs_error.str();
    out += ',';
    out += std::to_string(row.stage);
    out += '\n';
  }
  return out;
}

}  // namespace corrset
