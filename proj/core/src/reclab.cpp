#include "corrset/reclab.hpp"

#include <algorithm>

#include "corrset/empirical.hpp"
#include "corrset/errors.hpp"
#include "corrset/stream.hpp"

namespace corrset {

ShiftSet ShiftSet::squares() {
  ShiftSet s;
  s.kind_ = Kind::squares;
  return s;
}

ShiftSet ShiftSet::multiples(std::uint64_t m) {
  if (m == 0) throw ValidationError("ShiftSet::multiples: m must be positive");
  ShiftSet s;
  s.kind_ = Kind::multiples;
  s.m_ = m;
  return s;
}

ShiftSet ShiftSet::polynomial(std::vector<std::int64_t> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty() || coeffs.back() < 0)
    throw ValidationError("ShiftSet::polynomial: leading coefficient must be positive");
  ShiftSet s;
  s.kind_ = Kind::polynomial;
  s.coeffs_ = std::move(coeffs);
  return s;
}

ShiftSet ShiftSet::explicit_list(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  while (!values.empty() && values.front() == 0) values.erase(values.begin());
  if (values.empty()) throw ValidationError("ShiftSet: empty explicit set");
  ShiftSet s;
  s.kind_ = Kind::explicit_list;
  s.values_ = std::move(values);
  return s;
}

std::vector<std::uint64_t> ShiftSet::enumerate(std::uint64_t r_max) const {
  std::vector<std::uint64_t> out;
  switch (kind_) {
    case Kind::squares:
      for (std::uint64_t i = 1; i * i <= r_max; ++i) out.push_back(i * i);
      break;
    case Kind::multiples:
      for (std::uint64_t x = m_; x <= r_max; x += m_) out.push_back(x);
      break;
    case Kind::polynomial: {
      // past n0 the polynomial exceeds r_max for good: a crude but safe scan
      // bound from the coefficient sizes
      std::uint64_t abs_sum = 0;
      for (auto c : coeffs_) abs_sum += static_cast<std::uint64_t>(c < 0 ? -c : c);
      std::uint64_t n_stop = (coeffs_.size() <= 1) ? 1 : r_max + abs_sum + 2;
      for (std::uint64_t n = 0; n <= n_stop; ++n) {
        Int value = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
          value = value * Int(n) + Int(coeffs_[i]);
        if (value >= 1 && value <= Int(r_max))
          out.push_back(value.convert_to<std::uint64_t>());
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
    }
    case Kind::explicit_list:
      for (auto v : values_)
        if (v <= r_max) out.push_back(v);
      break;
  }
  return out;
}

std::string ShiftSet::describe() const {
  switch (kind_) {
    case Kind::squares:
      return "squares";
    case Kind::multiples:
      return "multiples(" + std::to_string(m_) + ")";
    case Kind::polynomial: {
      std::string s = "polynomial(";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coeffs_[i]);
      }
      return s + ")";
    }
    case Kind::explicit_list:
      return "explicit(" + std::to_string(values_.size()) + " values)";
  }
  return "?";
}

Cylinder default_target() { return Cylinder{{0, true}}; }

namespace {

// target cap sigma^-r target (cap sigma^-2r target, ...): merged constraint
// list; conflicting pins mean the event is empty.
std::optional<Cylinder> self_intersection(const Cylinder& target,
                                          const std::vector<std::uint64_t>& shifts) {
  std::vector<Cylinder::Constraint> merged;
  for (auto s : shifts)
    for (auto c : target.constraints()) merged.push_back({c.pos + s, c.symbol});
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.pos < b.pos; });
  std::vector<Cylinder::Constraint> dedup;
  for (const auto& c : merged) {
    if (!dedup.empty() && dedup.back().pos == c.pos) {
      if (dedup.back().symbol != c.symbol) return std::nullopt;
      continue;
    }
    dedup.push_back(c);
  }
  return Cylinder(std::move(dedup));
}

Prob self_correlation(const ShiftMeasure& nu, const Cylinder& target,
                      const std::vector<std::uint64_t>& shifts) {
  auto cyl = self_intersection(target, shifts);
  if (!cyl) return Prob(Rat(0));
  return cylinder_measure(nu, *cyl);
}

}  // namespace

WitnessResult recurrence_witness(const ShiftMeasure& nu, const ShiftSet& R,
                                 std::uint64_t r_max, const Cylinder& target) {
  WitnessResult res;
  res.searched_up_to = r_max;
  for (std::uint64_t r : R.enumerate(r_max)) {
    if (self_correlation(nu, target, {0, r}) > Prob(Rat(0))) {
      res.witness = r;
      break;
    }
  }
  return res;
}

WitnessResult nice_recurrence_witness(const ShiftMeasure& nu, const ShiftSet& R,
                                      const Rat& eps, std::uint64_t r_max,
                                      const Cylinder& target) {
  if (eps <= 0) throw ValidationError("nice_recurrence_witness: eps must be positive");
  WitnessResult res;
  res.searched_up_to = r_max;
  Prob base = cylinder_measure(nu, target);
  Prob threshold = base * base - Prob(eps);
  for (std::uint64_t r : R.enumerate(r_max)) {
    if (self_correlation(nu, target, {0, r}) > threshold) {
      res.witness = r;
      break;
    }
  }
  return res;
}

WitnessResult nice_intersectivity_witness(const Word& w, const ShiftSet& R,
                                          const Rat& eps, std::uint64_t r_max,
                                          std::uint64_t N) {
  if (eps <= 0) throw ValidationError("nice_intersectivity_witness: eps must be positive");
  if (w.size() < N + r_max)
    throw ValidationError("nice_intersectivity_witness: prefix shorter than N + r_max");
  WitnessResult res;
  res.searched_up_to = r_max;
  Rat base = intersection_density(w, {0}, N);
  Rat threshold = base * base - eps;
  for (std::uint64_t r : R.enumerate(r_max)) {
    if (intersection_density(w, {0, r}, N) > threshold) {
      res.witness = r;
      break;
    }
  }
  return res;
}

std::vector<std::uint64_t> r3_set(const ShiftMeasure& nu, const Rat& eps,
                                  std::uint64_t n_max, const Cylinder& target) {
  if (eps <= 0) throw ValidationError("r3_set: eps must be positive");
  Prob base = cylinder_measure(nu, target);
  Prob threshold = base * base * base - Prob(eps);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= n_max; ++n)
    if (self_correlation(nu, target, {0, n, 2 * n}) > threshold) out.push_back(n);
  return out;
}

TransferReport transfer_experiment(const ShiftMeasure& nu, const ShiftSet& R,
                                   const Rat& eps, std::uint64_t r_max,
                                   std::uint64_t N, const SynthesisOptions& opts) {
  TransferReport report;
  report.eps = eps;
  report.r_max = r_max;
  report.N = N;
  report.measure_side = nice_recurrence_witness(nu, R, eps, r_max);

  BitStream stream(nu, opts);
  Word w = stream.prefix(N + r_max);
  report.stage = stage_of(Int(N), stream.schedule()).k;
  report.set_side = nice_intersectivity_witness(w, R, eps, r_max, N);

  report.gaps_below_half_eps = true;
  Rat half_eps = eps / 2;
  auto add_row = [&](std::uint64_t r, const std::vector<std::uint64_t>& shifts) {
    TransferRow row;
    row.r = r;
    row.exact_corr = self_correlation(nu, default_target(), shifts);
    row.empirical_density = intersection_density(w, shifts, N);
    row.gap = (row.exact_corr - Prob(row.empirical_density)).abs();
    if (!(row.gap < Prob(half_eps))) report.gaps_below_half_eps = false;
    report.rows.push_back(std::move(row));
  };
  add_row(0, {0});
  for (std::uint64_t r : R.enumerate(r_max)) add_row(r, {0, r});

  report.witnesses_agree =
      report.measure_side.witness == report.set_side.witness;
  return report;
}

}  // namespace corrset
