#include "corrset/empirical.hpp"

#include <algorithm>
#include <bit>

#include "corrset/errors.hpp"

namespace corrset {

namespace {

// Shared 64-lane kernel: for each start i, AND together the (possibly
// complemented) word read at i + pos for every constraint.
template <typename ReadFn>
std::uint64_t count_matches_impl(const Cylinder& c, std::uint64_t n_starts,
                                 ReadFn read) {
  const auto& cs = c.constraints();
  std::uint64_t total = 0;
  for (std::uint64_t base = 0; base < n_starts; base += 64) {
    std::uint64_t lanes = std::min<std::uint64_t>(64, n_starts - base);
    std::uint64_t acc = lanes == 64 ? ~0ull : (1ull << lanes) - 1;
    for (const auto& con : cs) {
      std::uint64_t chunk = read(base + con.pos);
      if (!con.symbol) chunk = ~chunk;
      acc &= chunk;
      if (acc == 0) break;
    }
    total += std::popcount(acc);
  }
  return total;
}

}  // namespace

std::uint64_t count_matches_cyclic(const Word& w, const Cylinder& c,
                                   std::uint64_t n_starts) {
  if (w.empty()) throw ValidationError("count_matches_cyclic: empty word");
  return count_matches_impl(c, n_starts,
                            [&](std::uint64_t p) { return w.read64_cyclic(p); });
}

std::uint64_t count_matches_window(const Word& w, const Cylinder& c,
                                   std::uint64_t n_starts) {
  if (n_starts == 0) return 0;
  if (!c.is_full_space()) {
    std::uint64_t last = n_starts - 1 + c.constraints().back().pos;
    if (last >= w.size())
      throw ValidationError("count_matches_window: word too short for probed positions");
  }
  return count_matches_impl(c, n_starts,
                            [&](std::uint64_t p) { return w.read64(p); });
}

Rat empirical_measure(const Word& w, const Cylinder& c, EmpiricalMode mode) {
  if (w.empty()) throw ValidationError("empirical_measure: empty word");
  const std::uint64_t n = w.size();
  if (mode == EmpiricalMode::cyclic) {
    return Rat(Int(count_matches_cyclic(w, c, n)), Int(n));
  }
  const std::uint64_t order = c.order();
  if (order > n)
    throw ValidationError("empirical_measure: cylinder order exceeds word length");
  // starts i in [0,|w|) with i + order(C) <= |w|; denominator |w|
  std::uint64_t n_starts = order == 0 ? n : n - order + 1;
  return Rat(Int(count_matches_window(w, c, n_starts)), Int(n));
}

Rat intersection_density(const Word& w, const std::vector<std::uint64_t>& shifts,
                         std::uint64_t N) {
  if (shifts.empty()) throw ValidationError("intersection_density: empty shift list");
  if (N == 0) throw ValidationError("intersection_density: N must be positive");
  std::uint64_t max_shift = *std::max_element(shifts.begin(), shifts.end());
  if (w.size() < N + max_shift)
    throw ValidationError("intersection_density: prefix shorter than N + max(shifts)");
  Cylinder c = Cylinder::all_ones(shifts);
  return Rat(Int(count_matches_window(w, c, N)), Int(N));
}

std::vector<std::pair<int, Rat>> upper_density(const Word& w, const FolnerSequence& F,
                                               int N_max) {
  if (N_max < 1) throw ValidationError("upper_density: N_max must be >= 1");
  std::vector<std::pair<int, Rat>> out;
  out.reserve(static_cast<std::size_t>(N_max));
  for (int N = 1; N <= N_max; ++N) {
    std::uint64_t hits = 0, size = 0;
    if (F.is_interval()) {
      auto [lo, hi] = F.interval(N);
      if (hi > w.size())
        throw ValidationError("upper_density: F_N reaches beyond word prefix");
      hits = w.count_ones(lo, hi);
      size = hi - lo;
    } else {
      auto s = F.set(N);
      if (s.back() >= w.size())
        throw ValidationError("upper_density: F_N reaches beyond word prefix");
      for (auto x : s) hits += w[x] ? 1 : 0;
      size = s.size();
    }
    out.emplace_back(N, Rat(Int(hits), Int(size)));
  }
  return out;
}

Rat folner_defect(const FolnerSequence& F, std::uint64_t t, int N) {
  if (t == 0) throw ValidationError("folner_defect: t must be positive");
  if (F.is_interval()) {
    auto [lo, hi] = F.interval(N);
    std::uint64_t len = hi - lo;
    std::uint64_t sym = 2 * std::min(t, len);
    return Rat(Int(sym), Int(len));
  }
  auto a = F.set(N);
  std::vector<std::uint64_t> b;
  b.reserve(a.size());
  for (auto x : a) b.push_back(x + t);
  std::vector<std::uint64_t> inter;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(inter));
  std::uint64_t sym = a.size() + b.size() - 2 * inter.size();
  return Rat(Int(sym), Int(a.size()));
}

}  // namespace corrset
