#include "corrset/spectrum.hpp"

#include <bit>

#include "corrset/errors.hpp"

namespace corrset {

namespace {

constexpr int kMaxSpectrumOrder = 22;
constexpr unsigned kWideGuardBits = 250;

unsigned bit_width(const Wide& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(x < 0 ? Wide(-x) : x) + 1;
}

Int lcm_denominators(const std::vector<Rat>& xs, Int start = Int(1)) {
  Int l = start;
  for (const auto& q : xs) l = boost::multiprecision::lcm(l, Int(denominator(q)));
  return l;
}

void check_order(const ShiftMeasure& nu, int k) {
  if (k < 1 || k > kMaxSpectrumOrder)
    throw ResourceError("block spectrum: order " + std::to_string(k) +
                        " outside supported range [1," +
                        std::to_string(kMaxSpectrumOrder) + "] for " + nu.describe());
}

BlockSpectrum bernoulli_spectrum(const BernoulliData& data, int k) {
  Int den = denominator(data.p);
  Int a = numerator(data.p);
  Int b = den - a;
  // denom = den^k, num = a^ones * b^zeros
  Int denom = 1;
  for (int i = 0; i < k; ++i) denom *= den;
  std::vector<Int> pow_a(k + 1), pow_b(k + 1);
  pow_a[0] = pow_b[0] = 1;
  for (int i = 1; i <= k; ++i) {
    pow_a[i] = pow_a[i - 1] * a;
    pow_b[i] = pow_b[i - 1] * b;
  }
  BlockSpectrum s;
  s.k = k;
  s.denom = int_to_wide(denom);
  s.num.resize(std::size_t(1) << k);
  for (std::uint64_t id = 0; id < s.num.size(); ++id) {
    int ones = std::popcount(id);
    s.num[id] = int_to_wide(pow_a[ones] * pow_b[k - ones]);
  }
  return s;
}

BlockSpectrum markov_spectrum(const LabeledMarkovData& m, int k) {
  std::size_t n = m.states();
  Int dpi = lcm_denominators(m.stationary);
  Int dP = 1;
  for (const auto& row : m.transition) dP = lcm_denominators(row, dP);
  Int denom = dpi;
  for (int i = 1; i < k; ++i) denom *= dP;
  if (boost::multiprecision::msb(denom) + 1 > kWideGuardBits)
    throw ResourceError("block spectrum: Markov denominators exceed width guard");
  std::vector<Wide> pi_num(n);
  for (std::size_t s = 0; s < n; ++s)
    pi_num[s] = int_to_wide(Int(numerator(m.stationary[s])) * (dpi / denominator(m.stationary[s])));
  std::vector<std::vector<Wide>> P_num(n, std::vector<Wide>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      P_num[i][j] = int_to_wide(Int(numerator(m.transition[i][j])) *
                                (dP / denominator(m.transition[i][j])));

  BlockSpectrum s;
  s.k = k;
  s.denom = int_to_wide(denom);
  s.num.assign(std::size_t(1) << k, Wide(0));

  // depth-first over symbols; val[s] = sum over label-consistent state paths
  std::vector<std::vector<Wide>> level(static_cast<std::size_t>(k) + 1,
                                       std::vector<Wide>(n));
  struct Frame {
    int depth;
    std::uint64_t prefix;
    int next_bit;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  for (std::size_t st = 0; st < n; ++st) level[0][st] = pi_num[st];
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_bit > 1) {
      stack.pop_back();
      continue;
    }
    bool bit = f.next_bit++ != 0;
    auto& cur = level[f.depth];
    auto& nxt = level[f.depth + 1];
    bool any = false;
    if (f.depth == 0) {
      // first symbol constrains the initial state only
      for (std::size_t st = 0; st < n; ++st) {
        nxt[st] = (m.labels[st] == bit) ? cur[st] : Wide(0);
        any = any || nxt[st] != 0;
      }
    } else {
      for (std::size_t t = 0; t < n; ++t) {
        Wide acc = 0;
        if (m.labels[t] == bit) {
          for (std::size_t st = 0; st < n; ++st)
            if (cur[st] != 0 && P_num[st][t] != 0) acc += cur[st] * P_num[st][t];
        }
        nxt[t] = acc;
        any = any || acc != 0;
      }
    }
    std::uint64_t prefix = (f.prefix << 1) | (bit ? 1u : 0u);
    if (f.depth + 1 == k) {
      if (any) {
        Wide total = 0;
        for (std::size_t st = 0; st < n; ++st) total += nxt[st];
        s.num[prefix] = total;
      }
    } else if (any) {
      stack.push_back({f.depth + 1, prefix, 0});
    }
  }
  return s;
}

BlockSpectrum orbit_spectrum(const PeriodicOrbitData& data, int k) {
  auto counts = block_counts_cyclic(data.period_word, k);
  BlockSpectrum s;
  s.k = k;
  s.denom = Wide(static_cast<std::int64_t>(data.period_word.size()));
  s.num.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) s.num[i] = Wide(counts[i]);
  return s;
}

BlockSpectrum combine_spectra(const std::vector<Rat>& weights,
                              const std::vector<BlockSpectrum>& parts, int k) {
  Int l = 1;
  for (const auto& p : parts) l = boost::multiprecision::lcm(l, wide_to_int(p.denom));
  Int dw = lcm_denominators(weights);
  Int denom = dw * l;
  if (boost::multiprecision::msb(denom) + 1 > kWideGuardBits)
    throw ResourceError("block spectrum: mixture denominators exceed width guard");
  BlockSpectrum s;
  s.k = k;
  s.denom = int_to_wide(denom);
  s.num.assign(std::size_t(1) << k, Wide(0));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Int scale_int = Int(numerator(weights[i])) * (dw / denominator(weights[i])) *
                    (l / wide_to_int(parts[i].denom));
    Wide scale = int_to_wide(scale_int);
    if (scale == 0) continue;
    for (std::size_t b = 0; b < s.num.size(); ++b)
      if (parts[i].num[b] != 0) s.num[b] += scale * parts[i].num[b];
  }
  return s;
}

// rotation: depth-first arc refinement down the prefix tree
void rotation_spectrum_rec(const RotationCodingData& rot, int k, int depth,
                           std::uint64_t prefix,
                           const std::vector<std::pair<Real, Real>>& arcs,
                           std::vector<Real>& out) {
  if (arcs.empty()) return;
  if (depth == k) {
    Real total = 0;
    for (const auto& a : arcs) total += a.second - a.first;
    out[prefix] = total;
    return;
  }
  Real theta = Real(depth) * rot.alpha;
  theta -= floor(theta);
  for (int bit = 0; bit <= 1; ++bit) {
    // preimage of A^bit under rotation by depth steps
    std::vector<std::pair<Real, Real>> pre;
    auto add_shifted = [&](const Real& lo, const Real& hi) {
      Real l = lo - theta;
      l -= floor(l);
      Real h = l + (hi - lo);
      if (h <= 1)
        pre.emplace_back(l, h);
      else {
        pre.emplace_back(Real(0), h - 1);
        pre.emplace_back(l, Real(1));
      }
    };
    if (bit == 1) {
      add_shifted(rot.a, rot.b);
    } else {
      add_shifted(rot.b, Real(1));
      if (rot.a > 0) add_shifted(Real(0), rot.a);
    }
    std::vector<std::pair<Real, Real>> next;
    for (const auto& x : arcs)
      for (const auto& y : pre) {
        Real lo = std::max(x.first, y.first), hi = std::min(x.second, y.second);
        if (lo < hi) next.emplace_back(lo, hi);
      }
    rotation_spectrum_rec(rot, k, depth + 1, (prefix << 1) | bit, next, out);
  }
}

}  // namespace

Int wide_to_int(const Wide& x) {
  return Int(x.str());
}

Wide int_to_wide(const Int& x) {
  Int mag = x < 0 ? Int(-x) : x;
  if (mag != 0 && boost::multiprecision::msb(mag) + 1 > kWideGuardBits)
    throw ResourceError("integer exceeds 256-bit width guard");
  return Wide(x.str());
}

BlockSpectrum block_spectrum(const ShiftMeasure& nu, int k) {
  check_order(nu, k);
  switch (nu.variant()) {
    case ShiftMeasure::Variant::bernoulli:
      return bernoulli_spectrum(nu.as_bernoulli(), k);
    case ShiftMeasure::Variant::labeled_markov:
      return markov_spectrum(nu.as_markov(), k);
    case ShiftMeasure::Variant::periodic_orbit:
      return orbit_spectrum(nu.as_orbit(), k);
    case ShiftMeasure::Variant::rotation_coding:
      throw ValidationError("block spectrum: rotation codings have no rational spectrum");
    case ShiftMeasure::Variant::finite_mps: {
      auto comps = ergodic_decomposition(nu);
      std::vector<Rat> ws;
      std::vector<BlockSpectrum> parts;
      for (auto& c : comps) {
        ws.push_back(c.weight);
        parts.push_back(block_spectrum(c.measure, k));
      }
      return combine_spectra(ws, parts, k);
    }
    case ShiftMeasure::Variant::mixture: {
      const auto& mix = nu.as_mixture();
      std::vector<BlockSpectrum> parts;
      for (const auto& c : mix.components) parts.push_back(block_spectrum(c, k));
      return combine_spectra(mix.weights, parts, k);
    }
  }
  throw InternalError("block_spectrum: unknown variant");
}

std::vector<Real> block_spectrum_real(const ShiftMeasure& nu, int k) {
  check_order(nu, k);
  switch (nu.variant()) {
    case ShiftMeasure::Variant::rotation_coding: {
      const auto& rot = nu.as_rotation();
      unsigned saved = Real::default_precision();
      Real::default_precision(rot.digits);
      std::vector<Real> out(std::size_t(1) << k, Real(0));
      std::vector<std::pair<Real, Real>> full{{Real(0), Real(1)}};
      rotation_spectrum_rec(rot, k, 0, 0, full, out);
      Real::default_precision(saved);
      return out;
    }
    case ShiftMeasure::Variant::mixture: {
      const auto& mix = nu.as_mixture();
      std::vector<Real> out(std::size_t(1) << k, Real(0));
      for (std::size_t i = 0; i < mix.components.size(); ++i) {
        auto part = block_spectrum_real(mix.components[i], k);
        Real w = Real(numerator(mix.weights[i])) / Real(denominator(mix.weights[i]));
        for (std::size_t b = 0; b < out.size(); ++b) out[b] += w * part[b];
      }
      return out;
    }
    default: {
      auto s = block_spectrum(nu, k);
      std::vector<Real> out(s.num.size());
      Real d = Real(wide_to_int(s.denom));
      for (std::size_t b = 0; b < out.size(); ++b)
        out[b] = Real(wide_to_int(s.num[b])) / d;
      return out;
    }
  }
}

namespace {

// max |subset sum| over the cylinder lattice: at each position a block group
// is either split (pinned 0 / pinned 1) or merged (position unconstrained).
template <typename T>
T fold_max_abs(T* data, std::size_t len) {
  if (len == 1) return data[0] < 0 ? T(-data[0]) : data[0];
  std::size_t half = len / 2;
  T m0 = fold_max_abs(data, half);
  T m1 = fold_max_abs(data + half, half);
  std::vector<T> merged(half);
  for (std::size_t i = 0; i < half; ++i) merged[i] = data[i] + data[half + i];
  T m2 = fold_max_abs(merged.data(), half);
  T best = m0;
  if (m1 > best) best = m1;
  if (m2 > best) best = m2;
  return best;
}

struct WideDeviation {
  Wide bound;
  Wide denom;
  bool exact;
  Wide max_block;
};

WideDeviation deviation_from_errors(std::vector<Wide>& errors, const Wide& denom,
                                    int k, int exact_max_k) {
  Wide pos = 0, neg = 0, max_block = 0;
  for (const auto& e : errors) {
    if (e > 0) {
      pos += e;
      if (e > max_block) max_block = e;
    } else if (e < 0) {
      neg -= e;
      if (-e > max_block) max_block = -e;
    }
  }
  if (pos != neg)
    throw InternalError("block deviation: error vector does not sum to zero");
  WideDeviation d;
  d.denom = denom;
  d.max_block = max_block;
  if (k <= exact_max_k) {
    d.bound = fold_max_abs(errors.data(), errors.size());
    d.exact = true;
  } else {
    d.bound = pos;  // half the l1 norm dominates every cylinder sum
    d.exact = false;
  }
  return d;
}

Rat wide_ratio(const Wide& num, const Wide& den) {
  return Rat(wide_to_int(num), wide_to_int(den));
}

}  // namespace

Deviation block_deviation(const std::vector<std::int64_t>& a, std::int64_t ta,
                          const std::vector<std::int64_t>& b, std::int64_t tb,
                          int k, int exact_max_k) {
  if (a.size() != b.size() || a.size() != (std::size_t(1) << k))
    throw ValidationError("block deviation: size mismatch");
  std::vector<Wide> errors(a.size());
  Wide wta(ta), wtb(tb);
  for (std::size_t i = 0; i < a.size(); ++i)
    errors[i] = Wide(a[i]) * wtb - Wide(b[i]) * wta;
  auto d = deviation_from_errors(errors, wta * wtb, k, exact_max_k);
  return {wide_ratio(d.bound, d.denom), d.exact, wide_ratio(d.max_block, d.denom)};
}

Deviation block_deviation(const std::vector<std::int64_t>& counts, std::int64_t total,
                          const BlockSpectrum& target, int exact_max_k) {
  if (counts.size() != target.num.size())
    throw ValidationError("block deviation: size mismatch");
  if (bit_width(target.denom) + bit_width(Wide(total)) + 2 > 254)
    throw ResourceError("block deviation: width guard exceeded");
  std::vector<Wide> errors(counts.size());
  Wide wt(total);
  for (std::size_t i = 0; i < counts.size(); ++i)
    errors[i] = Wide(counts[i]) * target.denom - target.num[i] * wt;
  auto d = deviation_from_errors(errors, wt * target.denom, target.k, exact_max_k);
  return {wide_ratio(d.bound, d.denom), d.exact, wide_ratio(d.max_block, d.denom)};
}

DeviationReal block_deviation_real(const std::vector<std::int64_t>& counts,
                                   std::int64_t total, const std::vector<Real>& target,
                                   int exact_max_k) {
  if (counts.size() != target.size())
    throw ValidationError("block deviation: size mismatch");
  int k = 0;
  while ((std::size_t(1) << k) < counts.size()) ++k;
  std::vector<Real> errors(counts.size());
  Real rt(static_cast<double>(total));
  for (std::size_t i = 0; i < counts.size(); ++i)
    errors[i] = Real(counts[i]) / rt - target[i];
  Real pos = 0, neg = 0, max_block = 0;
  for (const auto& e : errors) {
    if (e > 0) pos += e;
    if (e < 0) neg -= e;
    Real a = e < 0 ? Real(-e) : e;
    if (a > max_block) max_block = a;
  }
  DeviationReal d;
  d.max_block = max_block;
  if (k <= exact_max_k) {
    d.value = fold_max_abs(errors.data(), errors.size());
    d.exact_max = true;
  } else {
    d.value = std::max(pos, neg);
    d.exact_max = false;
  }
  return d;
}

}  // namespace corrset
