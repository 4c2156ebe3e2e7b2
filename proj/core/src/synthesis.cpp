#include "corrset/synthesis.hpp"

#include <algorithm>
#include <random>

#include "corrset/empirical.hpp"
#include "corrset/errors.hpp"

namespace corrset {

namespace {

std::uint64_t int_to_u64(const Int& x, const char* what) {
  if (x < 0 || x > Int(UINT64_MAX))
    throw ResourceError(std::string(what) + ": value out of 64-bit range");
  return x.convert_to<std::uint64_t>();
}

// --- balanced rounding ----------------------------------------------------
//
// Round the fractional edge multiplicities X_b = n * num[b] / denom of the
// order-(k-1) de Bruijn multigraph to integers, keeping vertex balance exact.
// Floor everything, then finish the strictly fractional remainder rho by
// cycle cancellation: alternating walks through fractional slots always close
// into a signed cycle (at every vertex the fractional out- minus in-mass is
// an integer, so an arrival along a fractional edge guarantees a second
// fractional slot), and each pushed cycle makes at least one edge integral.

struct RoundingState {
  int k;
  Wide denom;
  std::vector<std::int64_t> count;  // running integer part
  std::vector<Wide> rho;            // fractional numerator in (0, denom)
};

bool fractional(const RoundingState& st, std::uint64_t e) {
  return st.rho[e] != 0;
}

void settle(RoundingState& st, std::uint64_t e) {
  if (st.rho[e] == st.denom) {
    st.rho[e] = 0;
    ++st.count[e];
  }
}

void cancel_fractional_edges(RoundingState& st) {
  const int k = st.k;
  const std::uint64_t E = std::uint64_t(1) << k;
  const std::uint64_t V = std::uint64_t(1) << (k - 1);
  const std::uint64_t vmask = V - 1;

  // self loops (all-zero / all-one blocks) do not affect balance
  for (std::uint64_t e : {std::uint64_t(0), E - 1}) {
    if (!fractional(st, e)) continue;
    if (2 * st.rho[e] >= st.denom) st.rho[e] = st.denom;
    else st.rho[e] = 0;
    settle(st, e);
  }
  if (k == 1) {
    // both edges are self loops
    return;
  }

  struct Step {
    std::uint64_t vert;
    std::uint64_t edge;
    int dir;  // +1 forward (edge leaves previous vertex), -1 backward
  };
  std::vector<Step> stack;
  std::vector<std::int64_t> mark(V, -1);
  auto clear_stack = [&] {
    for (const auto& s : stack) mark[s.vert] = -1;
    stack.clear();
  };

  std::uint64_t guard = 64 * E + (1u << 20);
  for (std::uint64_t cursor = 0; cursor < E; ++cursor) {
    if (!fractional(st, cursor)) continue;
    clear_stack();
    std::uint64_t u = cursor >> 1;
    stack.push_back({u, E, 0});
    mark[u] = 0;
    // first step: traverse the cursor edge forward
    std::uint64_t first_to = cursor & vmask;
    if (mark[first_to] >= 0)
      throw InternalError("balanced rounding: self loop escaped the pre-pass");
    stack.push_back({first_to, cursor, +1});
    mark[first_to] = 1;

    while (fractional(st, cursor)) {
      if (guard-- == 0)
        throw InternalError("balanced rounding: step guard exceeded");
      const Step& top = stack.back();
      std::uint64_t v = top.vert;
      std::uint64_t chosen = E;
      int dir = 0;
      // preference: forward 0-edge, forward 1-edge, backward low, backward high
      for (std::uint64_t e : {(v << 1), (v << 1) | 1}) {
        if (e != top.edge && fractional(st, e) && e != 0 && e != E - 1) {
          chosen = e;
          dir = +1;
          break;
        }
      }
      if (dir == 0) {
        for (std::uint64_t e : {v, v | V}) {
          if (e != top.edge && fractional(st, e) && e != 0 && e != E - 1) {
            chosen = e;
            dir = -1;
            break;
          }
        }
      }
      if (dir == 0)
        throw InternalError("balanced rounding: stuck walk (balance violated)");
      std::uint64_t next = dir > 0 ? (chosen & vmask) : (chosen >> 1);
      if (mark[next] >= 0) {
        // close the cycle stack[mark[next]+1 ..] + (chosen, dir)
        std::size_t base = static_cast<std::size_t>(mark[next]);
        Wide theta = dir > 0 ? st.denom - st.rho[chosen] : st.rho[chosen];
        for (std::size_t i = base + 1; i < stack.size(); ++i) {
          Wide room = stack[i].dir > 0 ? st.denom - st.rho[stack[i].edge]
                                       : st.rho[stack[i].edge];
          if (room < theta) theta = room;
        }
        auto push = [&](std::uint64_t e, int d) {
          if (d > 0) st.rho[e] += theta;
          else st.rho[e] -= theta;
          settle(st, e);
        };
        push(chosen, dir);
        for (std::size_t i = base + 1; i < stack.size(); ++i)
          push(stack[i].edge, stack[i].dir);
        while (stack.size() > base + 1) {
          mark[stack.back().vert] = -1;
          stack.pop_back();
        }
        // the walk below the cut is still marked; restart from the root if
        // the remaining arrival edge went integral
        if (stack.size() == 1 || !fractional(st, stack.back().edge)) {
          if (!fractional(st, cursor)) break;
          clear_stack();
          std::uint64_t ru = cursor >> 1;
          stack.push_back({ru, E, 0});
          mark[ru] = 0;
          std::uint64_t rt = cursor & vmask;
          stack.push_back({rt, cursor, +1});
          mark[rt] = 1;
        }
      } else {
        stack.push_back({next, chosen, dir});
        mark[next] = static_cast<std::int64_t>(stack.size()) - 1;
      }
    }
  }
  for (std::uint64_t e = 0; e < E; ++e)
    if (st.rho[e] != 0)
      throw InternalError("balanced rounding: fractional edge survived");
}

// --- connectivity ----------------------------------------------------------

struct UnionFind {
  std::vector<std::uint64_t> parent;
  explicit UnionFind(std::uint64_t n) : parent(n) {
    for (std::uint64_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::uint64_t find(std::uint64_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint64_t a, std::uint64_t b) { parent[find(a)] = find(b); }
};

// bridge x -> y along the canonical full-overlap path (k-1 edges)
void add_bridge(std::vector<std::int64_t>& count, int k, std::uint64_t x,
                std::uint64_t y) {
  const std::uint64_t vmask = (std::uint64_t(1) << (k - 1)) - 1;
  std::uint64_t state = x;
  for (int i = k - 2; i >= 0; --i) {
    std::uint64_t bit = (y >> i) & 1;
    std::uint64_t edge = (state << 1) | bit;
    ++count[edge];
    state = edge & vmask;
  }
}

void connect_components(std::vector<std::int64_t>& count, int k) {
  if (k == 1) return;
  const std::uint64_t E = std::uint64_t(1) << k;
  const std::uint64_t V = E >> 1;
  const std::uint64_t vmask = V - 1;
  UnionFind uf(V);
  for (std::uint64_t e = 0; e < E; ++e)
    if (count[e] > 0) uf.unite(e >> 1, e & vmask);
  std::uint64_t anchor = V;
  for (std::uint64_t v = 0; v < V; ++v) {
    if (count[v << 1] > 0 || count[(v << 1) | 1] > 0 || count[v] > 0 ||
        count[v | V] > 0) {
      anchor = v;
      break;
    }
  }
  if (anchor == V) throw InternalError("eulerian assembly: empty multigraph");
  for (std::uint64_t v = anchor + 1; v < V; ++v) {
    bool incident = count[v << 1] > 0 || count[(v << 1) | 1] > 0 || count[v] > 0 ||
                    count[v | V] > 0;
    if (!incident || uf.find(v) == uf.find(anchor)) continue;
    add_bridge(count, k, anchor, v);
    add_bridge(count, k, v, anchor);
    // bridges touch every vertex along the way
    std::uint64_t state = anchor;
    for (int i = k - 2; i >= 0; --i) {
      state = ((state << 1) | ((v >> i) & 1)) & vmask;
      uf.unite(state, anchor);
    }
    state = v;
    for (int i = k - 2; i >= 0; --i) {
      state = ((state << 1) | ((anchor >> i) & 1)) & vmask;
      uf.unite(state, anchor);
    }
    uf.unite(v, anchor);
  }
}

}  // namespace

std::vector<std::int64_t> balanced_block_counts(const BlockSpectrum& spectrum,
                                                std::uint64_t n) {
  RoundingState st;
  st.k = spectrum.k;
  st.denom = spectrum.denom;
  const std::size_t E = spectrum.num.size();
  st.count.resize(E);
  st.rho.resize(E);
  Wide wn(static_cast<std::int64_t>(n));
  for (std::size_t e = 0; e < E; ++e) {
    Wide x = wn * spectrum.num[e];
    st.count[e] = static_cast<std::int64_t>((x / spectrum.denom).convert_to<std::int64_t>());
    st.rho[e] = x % spectrum.denom;
  }
  cancel_fractional_edges(st);
  return std::move(st.count);
}

Word eulerian_word(std::vector<std::int64_t> counts, int k) {
  if (k == 1) {
    Word w;
    for (std::int64_t i = 0; i < counts[0]; ++i) w.push_back(false);
    for (std::int64_t i = 0; i < counts[1]; ++i) w.push_back(true);
    if (w.empty()) throw InternalError("eulerian assembly: empty multigraph");
    return w;
  }
  connect_components(counts, k);
  const std::uint64_t E = std::uint64_t(1) << k;
  const std::uint64_t V = E >> 1;
  const std::uint64_t vmask = V - 1;
  std::int64_t total = 0;
  for (std::uint64_t e = 0; e < E; ++e) total += counts[e];

  std::uint64_t start = V;
  for (std::uint64_t v = 0; v < V && start == V; ++v)
    if (counts[v << 1] > 0 || counts[(v << 1) | 1] > 0) start = v;
  if (start == V) throw InternalError("eulerian assembly: no out-edges");

  std::vector<bool> lost;
  lost.reserve(static_cast<std::size_t>(total));
  Word emitted;
  emitted.reserve(static_cast<std::uint64_t>(total) + 1);
  std::uint64_t cur = start;
  for (;;) {
    std::uint64_t e = cur << 1;
    if (counts[e] > 0) {
      --counts[e];
      lost.push_back(((cur >> (k - 2)) & 1) != 0);
      cur = e & vmask;
    } else if (counts[e | 1] > 0) {
      --counts[e | 1];
      lost.push_back(((cur >> (k - 2)) & 1) != 0);
      cur = (e | 1) & vmask;
    } else {
      emitted.push_back((cur & 1) != 0);
      if (lost.empty()) break;
      bool lb = lost.back();
      lost.pop_back();
      cur = (cur >> 1) | (std::uint64_t(lb ? 1 : 0) << (k - 2));
    }
  }
  for (std::uint64_t e = 0; e < E; ++e)
    if (counts[e] != 0)
      throw InternalError("eulerian assembly: multigraph was not connected");
  if (emitted.size() != static_cast<std::uint64_t>(total) + 1)
    throw InternalError("eulerian assembly: circuit length mismatch");
  // emitted is the reversed vertex sequence v_E .. v_0; drop v_0, reverse
  Word w = emitted.prefix(emitted.size() - 1).reversed();
  return w;
}

namespace {

// --- word generation strategies -------------------------------------------

Word repeat_to(const Word& w, std::uint64_t n_min) {
  if (w.size() >= n_min) return w;
  Word out;
  out.reserve(n_min);
  std::uint64_t reps = (n_min + w.size() - 1) / w.size();
  out.append_cyclic(w, 0, reps * w.size());
  return out;
}

Word rotation_orbit_word(const RotationCodingData& rot, std::uint64_t n) {
  unsigned saved = Real::default_precision();
  Real::default_precision(rot.digits);
  Real theta = rot.alpha - floor(rot.alpha);
  Word w;
  w.reserve(n);
  Real pos = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    w.push_back(pos >= rot.a && pos < rot.b);
    pos += theta;
    if (pos >= 1) pos -= 1;
  }
  Real::default_precision(saved);
  return w;
}

Word sampled_word(const ShiftMeasure& nu, std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto threshold = [](const Rat& p) -> std::uint64_t {
    // floor(p * 2^64), saturated
    Int t = (Int(numerator(p)) << 64) / Int(denominator(p));
    if (t >= Int(UINT64_MAX)) return UINT64_MAX;
    return t.convert_to<std::uint64_t>();
  };
  Word w;
  w.reserve(n);
  switch (nu.variant()) {
    case ShiftMeasure::Variant::bernoulli: {
      const Rat& p = nu.as_bernoulli().p;
      if (p == 1) return Word::filled(n, true);
      std::uint64_t t = threshold(p);
      for (std::uint64_t i = 0; i < n; ++i) w.push_back(rng() < t);
      return w;
    }
    case ShiftMeasure::Variant::labeled_markov: {
      const auto& m = nu.as_markov();
      auto pick = [&](const std::vector<Rat>& dist) {
        std::uint64_t r = rng();
        Rat cum = 0;
        for (std::size_t s = 0; s + 1 < dist.size(); ++s) {
          cum += dist[s];
          if (r < threshold(cum)) return s;
        }
        return dist.size() - 1;
      };
      std::size_t state = pick(m.stationary);
      for (std::uint64_t i = 0; i < n; ++i) {
        w.push_back(m.labels[state]);
        state = pick(m.transition[state]);
      }
      return w;
    }
    case ShiftMeasure::Variant::periodic_orbit:
      return repeat_to(nu.as_orbit().period_word, n);
    case ShiftMeasure::Variant::rotation_coding:
      return rotation_orbit_word(nu.as_rotation(), n);
    default:
      throw ValidationError("sampled_word: not an ergodic variant");
  }
}

struct WordCertificate {
  Prob value;
  bool exact_max;
};

WordCertificate measure_word_deviation(const ShiftMeasure& nu, const Word& w, int k,
                                       int exact_max_k) {
  auto counts = block_counts_cyclic(w, k);
  if (nu.is_rational()) {
    auto dev = block_deviation(counts, static_cast<std::int64_t>(w.size()),
                               block_spectrum(nu, k), exact_max_k);
    return {Prob(dev.value), dev.exact_max};
  }
  auto target = block_spectrum_real(nu, k);
  auto dev = block_deviation_real(counts, static_cast<std::int64_t>(w.size()), target,
                                  exact_max_k);
  return {Prob(dev.value), dev.exact_max};
}

}  // namespace

Int reentry_threshold(std::uint64_t p, int k, const Rat& eps) {
  if (p == 0 || k < 1) throw ValidationError("reentry_threshold: p, k must be positive");
  if (eps <= 0) throw ValidationError("reentry_threshold: eps must be positive");
  Int bound = rational_ceil(Rat(5) * Rat(Int(k) + Int(p)) / eps);
  Int pp(p);
  return bound > pp ? bound : pp;
}

Word ergodic_word(const ShiftMeasure& nu, int k, const Rat& eps,
                  std::uint64_t n_min, const SynthesisOptions& opts) {
  if (k < 1) throw ValidationError("ergodic_word: order must be positive");
  if (eps <= 0) throw ValidationError("ergodic_word: eps must be positive");
  if (n_min == 0) n_min = 1;
  if (!is_ergodic_variant(nu, /*require_aperiodic=*/false))
    throw ValidationError("ergodic_word: measure is not an admitted ergodic variant: " +
                          nu.describe());

  // exact case: the orbit word reproduces its measure verbatim
  if (nu.variant() == ShiftMeasure::Variant::periodic_orbit) {
    Word w = repeat_to(nu.as_orbit().period_word, n_min);
    auto cert = measure_word_deviation(nu, w, k, opts.exact_certificate_order);
    if (!(cert.value < Prob(eps)))
      throw InternalError("ergodic_word: periodic orbit word failed certification");
    return w;
  }

  const bool sampled = opts.strategy == SynthesisOptions::Strategy::sampled;
  const bool rational = nu.is_rational();

  Int heuristic = rational_ceil(Rat(Int(1) << k) * Rat(3, 4) / eps);
  Int start_n = heuristic > Int(n_min) ? heuristic : Int(n_min);
  if (start_n > Int(opts.max_word_bits))
    throw ResourceError("ergodic_word: requested accuracy needs " + start_n.str() +
                        " bits, over the word budget");
  std::uint64_t n = int_to_u64(start_n, "ergodic_word length");

  BlockSpectrum spectrum;
  Int denom_int;
  if (rational && !sampled) {
    spectrum = block_spectrum(nu, k);
    denom_int = wide_to_int(spectrum.denom);
  }

  std::uint64_t retry_factor = 1;
  for (;;) {
    Word w;
    if (sampled) {
      w = sampled_word(nu, n, opts.sample_seed);
    } else if (!rational) {
      w = rotation_orbit_word(nu.as_rotation(), n);
    } else if (denom_int <= Int(n)) {
      // exact quota: a multiple of the common denominator gives integral
      // multiplicities with zero rounding error
      std::uint64_t d = int_to_u64(denom_int, "spectrum denominator");
      std::uint64_t m = retry_factor * ((std::max(n_min, std::uint64_t(1)) + d - 1) / d);
      std::vector<std::int64_t> counts(spectrum.num.size());
      for (std::size_t e = 0; e < counts.size(); ++e)
        counts[e] = (Wide(static_cast<std::int64_t>(m)) * spectrum.num[e])
                        .convert_to<std::int64_t>();
      w = eulerian_word(std::move(counts), k);
    } else {
      w = eulerian_word(balanced_block_counts(spectrum, n), k);
    }
    w = repeat_to(w, n_min);
    auto cert = measure_word_deviation(nu, w, k, opts.exact_certificate_order);
    if (cert.value < Prob(eps)) return w;
    if (n > opts.max_word_bits / 2)
      throw ResourceError("ergodic_word: certification failed within the word budget (" +
                          nu.describe() + ", eps=" + eps.str() + ")");
    n *= 2;
    retry_factor *= 2;
  }
}

Approximant periodic_approximant(const ShiftMeasure& nu, int k, const Rat& eps,
                                 const SynthesisOptions& opts) {
  if (k < 1) throw ValidationError("periodic_approximant: order must be positive");
  if (eps <= 0) throw ValidationError("periodic_approximant: eps must be positive");

  // (a) exact decomposition; zero-weight components dropped
  auto decomp = ergodic_decomposition(nu);
  std::erase_if(decomp, [](const ErgodicComponent& c) { return c.weight == 0; });
  if (decomp.empty()) throw ValidationError("periodic_approximant: empty decomposition");
  const std::size_t r = decomp.size();

  // (b) per-component ergodic words at eps/5
  Rat comp_eps = eps / 5;
  std::vector<Word> words;
  words.reserve(r);
  for (const auto& c : decomp) words.push_back(ergodic_word(c.measure, k, comp_eps, 1, opts));

  Approximant ap;
  ap.k = k;
  ap.eps = eps;

  if (r == 1) {
    // single block, no concatenation boundaries: the word itself is cyclic
    ap.x = std::move(words.front());
    ap.components.push_back({decomp[0].weight, ap.x.size(), ap.x.size()});
  } else {
    // (c) block lengths: multiples of each word length, proportions within
    // eps/(5r) (eq 3) and boundary budget r*k/p < eps/5 (eq 4)
    Rat prop_tol = eps / (5 * static_cast<int>(r));
    Rat boundary_tol = eps / 5;
    Int P = rational_ceil(Rat(5 * static_cast<int>(r) * k) / eps) + 1;
    for (const auto& w : words) P += Int(w.size());
    std::vector<std::uint64_t> block_len(r);
    for (int attempt = 0;; ++attempt) {
      if (attempt > 80 || P > Int(opts.max_word_bits))
        throw ResourceError("periodic_approximant: block-length search exhausted");
      Int total = 0;
      for (std::size_t i = 0; i < r; ++i) {
        Int wl(words[i].size());
        // nearest multiple of the word length to alpha_i * P, at least one
        Int m = rational_floor(decomp[i].weight * Rat(P) / Rat(wl) + Rat(1, 2));
        if (m < 1) m = 1;
        Int len = m * wl;
        block_len[i] = int_to_u64(len, "block length");
        total += len;
      }
      bool ok = total > 0;
      Rat p_rat(total);
      for (std::size_t i = 0; i < r && ok; ++i) {
        Rat prop = Rat(Int(block_len[i])) / p_rat;
        Rat err = prop - decomp[i].weight;
        if (err < 0) err = -err;
        ok = err < prop_tol;
      }
      if (ok) ok = Rat(static_cast<int>(r) * k) / p_rat < boundary_tol;
      if (ok) break;
      P *= 2;
    }
    // (d) concatenate x = w_1-block • ... • w_r-block
    std::uint64_t period = 0;
    for (auto len : block_len) period += len;
    ap.x.reserve(period);
    for (std::size_t i = 0; i < r; ++i) {
      ap.x.append_cyclic(words[i], 0, block_len[i]);
      ap.components.push_back({decomp[i].weight, words[i].size(), block_len[i]});
    }
  }

  // (e) unconditional verification by direct cyclic counting
  auto cert = measure_word_deviation(nu, ap.x, k, opts.exact_certificate_order);
  ap.certificate = cert.value;
  ap.certificate_exact_max = cert.exact_max;
  if (!(ap.certificate < Prob(Rat(4) * eps / 5)))
    throw InternalError("periodic_approximant: certificate " + ap.certificate.str() +
                        " missed the 4eps/5 bound, eps=" + eps.str());

  // (f) re-entry threshold
  ap.r0 = reentry_threshold(ap.period(), k, eps);
  return ap;
}

}  // namespace corrset
