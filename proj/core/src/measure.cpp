#include "corrset/measure.hpp"

#include <algorithm>
#include <numeric>

#include "corrset/empirical.hpp"
#include "corrset/errors.hpp"

namespace corrset {

namespace {

constexpr std::size_t kMaxStates = 4096;

void check_probability(const Rat& p, const char* what) {
  if (p < 0 || p > 1) throw ValidationError(std::string(what) + " must lie in [0,1]");
}

void check_weights_sum_to_one(const std::vector<Rat>& w, const char* what) {
  Rat total = 0;
  for (const auto& x : w) {
    if (x < 0) throw ValidationError(std::string(what) + ": negative weight");
    total += x;
  }
  if (total != 1) throw ValidationError(std::string(what) + ": weights must sum to 1 exactly");
}

// --- Markov structure ----------------------------------------------------

std::vector<std::vector<std::size_t>> positive_adjacency(const LabeledMarkovData& m) {
  std::size_t n = m.states();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.transition[i][j] > 0) adj[i].push_back(j);
  return adj;
}

void reach_from(const std::vector<std::vector<std::size_t>>& adj, std::size_t s,
                std::vector<char>& seen) {
  std::vector<std::size_t> stack{s};
  seen.assign(adj.size(), 0);
  seen[s] = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
}

bool markov_irreducible(const LabeledMarkovData& m) {
  auto adj = positive_adjacency(m);
  std::size_t n = m.states();
  auto radj = std::vector<std::vector<std::size_t>>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : adj[i]) radj[j].push_back(i);
  std::vector<char> fwd, bwd;
  reach_from(adj, 0, fwd);
  reach_from(radj, 0, bwd);
  for (std::size_t i = 0; i < n; ++i)
    if (!fwd[i] || !bwd[i]) return false;
  return true;
}

// period of an irreducible chain: gcd of level mismatches over edges
std::size_t markov_period(const LabeledMarkovData& m) {
  auto adj = positive_adjacency(m);
  std::size_t n = m.states();
  std::vector<std::int64_t> level(n, -1);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  std::int64_t g = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t u = queue[qi];
    for (std::size_t v : adj[u]) {
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      } else {
        g = std::gcd(g, level[u] + 1 - level[v]);
      }
    }
  }
  return static_cast<std::size_t>(g < 0 ? -g : g);
}

// --- Rotation arcs -------------------------------------------------------

struct Arc {
  Real lo, hi;  // [lo, hi) subset of [0,1), lo <= hi
};

Real frac(const Real& x) {
  Real f = x - floor(x);
  if (f < 0) f += 1;
  if (f >= 1) f -= 1;
  return f;
}

// [a,b) - theta mod 1 as one or two canonical arcs; requires 0 <= a < b <= 1
std::vector<Arc> shifted_arc(const Real& a, const Real& b, const Real& theta) {
  Real lo = frac(a - theta);
  Real len = b - a;
  Real hi = lo + len;
  if (hi <= 1) return {{lo, hi}};
  return {{Real(0), hi - 1}, {lo, Real(1)}};
}

std::vector<Arc> intersect_arcs(const std::vector<Arc>& xs, const std::vector<Arc>& ys) {
  std::vector<Arc> out;
  for (const auto& x : xs)
    for (const auto& y : ys) {
      Real lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
      if (lo < hi) out.push_back({lo, hi});
    }
  return out;
}

unsigned rotation_digits_needed(std::uint64_t max_position) {
  unsigned d = 12;
  while (max_position > 0) {
    ++d;
    max_position /= 10;
  }
  return d;
}

Prob rotation_cylinder_measure(const RotationCodingData& rot, const Cylinder& c) {
  if (c.order() > 0 && rot.digits < rotation_digits_needed(c.order() - 1))
    throw ResourceError("rotation coding: precision budget exhausted for order " +
                        std::to_string(c.order()));
  unsigned saved = Real::default_precision();
  Real::default_precision(rot.digits);
  std::vector<Arc> arcs{{Real(0), Real(1)}};
  for (const auto& con : c.constraints()) {
    Real theta = frac(Real(con.pos) * rot.alpha);
    std::vector<Arc> pre;
    if (con.symbol) {
      pre = shifted_arc(rot.a, rot.b, theta);
    } else {
      // complement [b, a+1) wraps unless a == 0
      std::vector<Arc> left = shifted_arc(rot.b, Real(1), theta);
      std::vector<Arc> right = rot.a > 0 ? shifted_arc(Real(0), rot.a, theta)
                                         : std::vector<Arc>{};
      pre = left;
      pre.insert(pre.end(), right.begin(), right.end());
    }
    arcs = intersect_arcs(arcs, pre);
    if (arcs.empty()) break;
  }
  Real total = 0;
  for (const auto& arc : arcs) total += arc.hi - arc.lo;
  Real::default_precision(saved);
  return Prob(total);
}

// --- Finite system orbit arithmetic --------------------------------------

struct CycleIndex {
  // for each point: cycle id, index within cycle
  std::vector<std::size_t> cycle_of, index_in;
  std::vector<std::vector<std::size_t>> cycles;  // cycle -> points in orbit order
};

CycleIndex cycle_decomposition(const std::vector<std::size_t>& perm) {
  std::size_t n = perm.size();
  CycleIndex ci;
  ci.cycle_of.assign(n, SIZE_MAX);
  ci.index_in.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (ci.cycle_of[s] != SIZE_MAX) continue;
    std::vector<std::size_t> cyc;
    std::size_t x = s;
    do {
      ci.cycle_of[x] = ci.cycles.size();
      ci.index_in[x] = cyc.size();
      cyc.push_back(x);
      x = perm[x];
    } while (x != s);
    ci.cycles.push_back(std::move(cyc));
  }
  return ci;
}

std::size_t advance(const CycleIndex& ci, std::size_t x, std::uint64_t n) {
  const auto& cyc = ci.cycles[ci.cycle_of[x]];
  std::uint64_t idx = (ci.index_in[x] + n % cyc.size()) % cyc.size();
  return cyc[idx];
}

Prob mps_cylinder_measure(const FiniteMpsData& sys, const Cylinder& c) {
  CycleIndex ci = cycle_decomposition(sys.permutation);
  Rat total = 0;
  for (std::size_t x = 0; x < sys.points(); ++x) {
    bool match = true;
    for (const auto& con : c.constraints()) {
      if (sys.in_A[advance(ci, x, con.pos)] != con.symbol) {
        match = false;
        break;
      }
    }
    if (match) total += sys.weights[x];
  }
  return Prob(total);
}

// --- Markov transfer product ---------------------------------------------

std::vector<Rat> vec_times_matrix(const std::vector<Rat>& v,
                                  const std::vector<std::vector<Rat>>& P) {
  std::size_t n = v.size();
  std::vector<Rat> out(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (P[i][j] != 0) out[j] += v[i] * P[i][j];
  }
  return out;
}

Prob markov_cylinder_measure(const LabeledMarkovData& m, const Cylinder& c) {
  if (c.is_full_space()) return Prob(Rat(1));
  const auto& cs = c.constraints();
  std::vector<Rat> v = m.stationary;
  std::uint64_t at = cs.front().pos;  // stationarity: start directly at n_1
  auto mask_by_label = [&](std::vector<Rat>& u, bool bit) {
    for (std::size_t s = 0; s < m.states(); ++s)
      if (m.labels[s] != bit) u[s] = 0;
  };
  mask_by_label(v, cs.front().symbol);
  for (std::size_t ci = 1; ci < cs.size(); ++ci) {
    for (std::uint64_t step = at; step < cs[ci].pos; ++step) v = vec_times_matrix(v, m.transition);
    at = cs[ci].pos;
    mask_by_label(v, cs[ci].symbol);
  }
  Rat total = 0;
  for (const auto& x : v) total += x;
  return Prob(total);
}

}  // namespace

// --- factories -----------------------------------------------------------

ShiftMeasure ShiftMeasure::bernoulli(Rat p) {
  check_probability(p, "Bernoulli p");
  return ShiftMeasure(Data(BernoulliData{std::move(p)}));
}

ShiftMeasure ShiftMeasure::labeled_markov(std::vector<std::vector<Rat>> transition,
                                          std::vector<Rat> stationary,
                                          std::vector<bool> labels) {
  std::size_t n = stationary.size();
  if (n == 0 || n > kMaxStates) throw ValidationError("LabeledMarkov: bad state count");
  if (transition.size() != n || labels.size() != n)
    throw ValidationError("LabeledMarkov: dimension mismatch");
  for (const auto& row : transition) {
    if (row.size() != n) throw ValidationError("LabeledMarkov: transition not square");
    Rat sum = 0;
    for (const auto& x : row) {
      if (x < 0) throw ValidationError("LabeledMarkov: negative transition entry");
      sum += x;
    }
    if (sum != 1) throw ValidationError("LabeledMarkov: row sums must equal 1 exactly");
  }
  check_weights_sum_to_one(stationary, "LabeledMarkov stationary");
  LabeledMarkovData data{std::move(transition), std::move(stationary), std::move(labels)};
  auto piP = vec_times_matrix(data.stationary, data.transition);
  if (piP != data.stationary)
    throw ValidationError("LabeledMarkov: stationary vector does not satisfy pi P = pi");
  return ShiftMeasure(Data(std::move(data)));
}

ShiftMeasure ShiftMeasure::periodic_orbit(Word period_word) {
  if (period_word.empty()) throw ValidationError("PeriodicOrbit: empty period word");
  return ShiftMeasure(Data(PeriodicOrbitData{std::move(period_word)}));
}

ShiftMeasure ShiftMeasure::rotation_coding(Real alpha, Real a, Real b, unsigned digits) {
  if (digits < 8) throw ValidationError("RotationCoding: at least 8 digits required");
  if (!(a >= 0 && a < b && b <= 1))
    throw ValidationError("RotationCoding: interval must satisfy 0 <= a < b <= 1");
  return ShiftMeasure(Data(RotationCodingData{std::move(alpha), std::move(a), std::move(b), digits}));
}

ShiftMeasure ShiftMeasure::finite_mps(std::vector<Rat> weights,
                                      std::vector<std::size_t> permutation,
                                      std::vector<bool> in_A) {
  std::size_t n = weights.size();
  if (n == 0 || n > kMaxStates) throw ValidationError("FiniteMPS: bad point count");
  if (permutation.size() != n || in_A.size() != n)
    throw ValidationError("FiniteMPS: dimension mismatch");
  std::vector<char> seen(n, 0);
  for (std::size_t x : permutation) {
    if (x >= n || seen[x]) throw ValidationError("FiniteMPS: permutation is not a bijection");
    seen[x] = 1;
  }
  check_weights_sum_to_one(weights, "FiniteMPS weights");
  for (std::size_t x = 0; x < n; ++x)
    if (weights[permutation[x]] != weights[x])
      throw ValidationError(
          "FiniteMPS: weights are not invariant under T (non-uniform on a cycle)");
  return ShiftMeasure(Data(FiniteMpsData{std::move(weights), std::move(permutation), std::move(in_A)}));
}

ShiftMeasure ShiftMeasure::mixture(std::vector<Rat> weights,
                                   std::vector<ShiftMeasure> components) {
  if (weights.size() != components.size() || weights.empty())
    throw ValidationError("Mixture: component/weight mismatch");
  check_weights_sum_to_one(weights, "Mixture");
  for (const auto& c : components) {
    if (c.variant() == Variant::mixture)
      throw ValidationError("Mixture: nesting of mixtures is forbidden");
    if (!is_ergodic_variant(c, /*require_aperiodic=*/true))
      throw ValidationError("Mixture: components must be ergodic variants");
  }
  return ShiftMeasure(Data(MixtureData{std::move(weights), std::move(components)}));
}

bool ShiftMeasure::is_rational() const {
  if (variant() == Variant::rotation_coding) return false;
  if (variant() == Variant::mixture) {
    for (const auto& c : as_mixture().components)
      if (!c.is_rational()) return false;
  }
  return true;
}

std::string ShiftMeasure::describe() const {
  switch (variant()) {
    case Variant::bernoulli:
      return "bernoulli(" + as_bernoulli().p.str() + ")";
    case Variant::labeled_markov:
      return "labeled_markov(" + std::to_string(as_markov().states()) + " states)";
    case Variant::periodic_orbit:
      return "periodic_orbit(\"" + as_orbit().period_word.to_string() + "\")";
    case Variant::rotation_coding:
      return "rotation_coding";
    case Variant::finite_mps:
      return "finite_mps(" + std::to_string(as_mps().points()) + " points)";
    case Variant::mixture: {
      std::string s = "mixture(";
      const auto& mix = as_mixture();
      for (std::size_t i = 0; i < mix.components.size(); ++i) {
        if (i) s += " + ";
        s += mix.weights[i].str() + "*" + mix.components[i].describe();
      }
      return s + ")";
    }
  }
  return "?";
}

// --- operations ----------------------------------------------------------

Prob cylinder_measure(const ShiftMeasure& nu, const Cylinder& c) {
  switch (nu.variant()) {
    case ShiftMeasure::Variant::bernoulli: {
      const Rat& p = nu.as_bernoulli().p;
      Rat value = 1;
      for (const auto& con : c.constraints()) value *= con.symbol ? p : 1 - p;
      return Prob(value);
    }
    case ShiftMeasure::Variant::labeled_markov:
      return markov_cylinder_measure(nu.as_markov(), c);
    case ShiftMeasure::Variant::periodic_orbit: {
      const Word& w = nu.as_orbit().period_word;
      return Prob(Rat(Int(count_matches_cyclic(w, c, w.size())), Int(w.size())));
    }
    case ShiftMeasure::Variant::rotation_coding:
      return rotation_cylinder_measure(nu.as_rotation(), c);
    case ShiftMeasure::Variant::finite_mps:
      return mps_cylinder_measure(nu.as_mps(), c);
    case ShiftMeasure::Variant::mixture: {
      const auto& mix = nu.as_mixture();
      Prob total(Rat(0));
      for (std::size_t i = 0; i < mix.components.size(); ++i)
        total += Prob(mix.weights[i]) * cylinder_measure(mix.components[i], c);
      return total;
    }
  }
  throw InternalError("cylinder_measure: unknown variant");
}

Prob correlation(const ShiftMeasure& nu, const std::vector<std::uint64_t>& shifts) {
  return cylinder_measure(nu, Cylinder::all_ones(shifts));
}

ShiftMeasure mps_pushforward(const FiniteMpsData& system) {
  return ShiftMeasure::finite_mps(system.weights, system.permutation, system.in_A);
}

ShiftMeasure mps_pushforward(const RotationCodingData& system) {
  return ShiftMeasure::rotation_coding(system.alpha, system.a, system.b, system.digits);
}

bool is_ergodic_variant(const ShiftMeasure& nu, bool require_aperiodic) {
  switch (nu.variant()) {
    case ShiftMeasure::Variant::bernoulli:
    case ShiftMeasure::Variant::periodic_orbit:
    case ShiftMeasure::Variant::rotation_coding:
      return true;
    case ShiftMeasure::Variant::labeled_markov: {
      const auto& m = nu.as_markov();
      if (!markov_irreducible(m)) return false;
      return !require_aperiodic || markov_period(m) == 1;
    }
    default:
      return false;
  }
}

namespace {

std::vector<ErgodicComponent> decompose_finite_mps(const FiniteMpsData& sys) {
  CycleIndex ci = cycle_decomposition(sys.permutation);
  std::vector<ErgodicComponent> out;
  for (const auto& cyc : ci.cycles) {
    // factory validation guarantees uniform weights along the cycle
    Rat w0 = sys.weights[cyc.front()];
    for (std::size_t x : cyc)
      if (sys.weights[x] != w0)
        throw InternalError("ergodic_decomposition: non-invariant weights survived validation");
    Rat weight = w0 * Rat(static_cast<unsigned long>(cyc.size()));
    if (weight == 0) continue;
    Word orbit_word;
    for (std::size_t x : cyc) orbit_word.push_back(sys.in_A[x]);
    out.push_back({std::move(weight), ShiftMeasure::periodic_orbit(std::move(orbit_word))});
  }
  if (out.empty()) throw ValidationError("ergodic_decomposition: zero-mass system");
  return out;
}

std::vector<ErgodicComponent> decompose_markov(const LabeledMarkovData& m,
                                               const ShiftMeasure& original) {
  if (markov_irreducible(m)) return {{Rat(1), original}};
  // split along closed communicating classes carrying stationary mass
  std::size_t n = m.states();
  auto adj = positive_adjacency(m);
  std::vector<std::size_t> comp(n, SIZE_MAX);
  std::size_t ncomp = 0;
  {
    // Kosaraju
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> order;
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      stack.push_back({s, 0});
      seen[s] = 1;
      while (!stack.empty()) {
        auto& [u, i] = stack.back();
        if (i < adj[u].size()) {
          std::size_t v = adj[u][i++];
          if (!seen[v]) {
            seen[v] = 1;
            stack.push_back({v, 0});
          }
        } else {
          order.push_back(u);
          stack.pop_back();
        }
      }
    }
    std::vector<std::vector<std::size_t>> radj(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v : adj[u]) radj[v].push_back(u);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (comp[*it] != SIZE_MAX) continue;
      std::vector<std::size_t> st{*it};
      comp[*it] = ncomp;
      while (!st.empty()) {
        std::size_t u = st.back();
        st.pop_back();
        for (std::size_t v : radj[u])
          if (comp[v] == SIZE_MAX) {
            comp[v] = ncomp;
            st.push_back(v);
          }
      }
      ++ncomp;
    }
  }
  std::vector<char> closed(ncomp, 1);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : adj[u])
      if (comp[u] != comp[v]) closed[comp[u]] = 0;
  std::vector<Rat> mass(ncomp, Rat(0));
  for (std::size_t s = 0; s < n; ++s) mass[comp[s]] += m.stationary[s];
  for (std::size_t s = 0; s < n; ++s)
    if (m.stationary[s] > 0 && !closed[comp[s]])
      throw ValidationError(
          "ergodic_decomposition: stationary mass on a non-closed class");
  std::vector<ErgodicComponent> out;
  for (std::size_t cid = 0; cid < ncomp; ++cid) {
    if (!closed[cid] || mass[cid] == 0) continue;
    std::vector<std::size_t> states;
    for (std::size_t s = 0; s < n; ++s)
      if (comp[s] == cid) states.push_back(s);
    std::size_t k = states.size();
    std::vector<std::vector<Rat>> P(k, std::vector<Rat>(k, Rat(0)));
    std::vector<Rat> pi(k);
    std::vector<bool> labels(k);
    for (std::size_t i = 0; i < k; ++i) {
      pi[i] = m.stationary[states[i]] / mass[cid];
      labels[i] = m.labels[states[i]];
      for (std::size_t j = 0; j < k; ++j)
        P[i][j] = m.transition[states[i]][states[j]];
    }
    out.push_back({mass[cid], ShiftMeasure::labeled_markov(std::move(P), std::move(pi),
                                                           std::move(labels))});
  }
  return out;
}

}  // namespace

std::vector<ErgodicComponent> ergodic_decomposition(const ShiftMeasure& nu) {
  switch (nu.variant()) {
    case ShiftMeasure::Variant::bernoulli:
    case ShiftMeasure::Variant::periodic_orbit:
    case ShiftMeasure::Variant::rotation_coding:
      return {{Rat(1), nu}};
    case ShiftMeasure::Variant::labeled_markov:
      return decompose_markov(nu.as_markov(), nu);
    case ShiftMeasure::Variant::finite_mps:
      return decompose_finite_mps(nu.as_mps());
    case ShiftMeasure::Variant::mixture: {
      const auto& mix = nu.as_mixture();
      std::vector<ErgodicComponent> out;
      for (std::size_t i = 0; i < mix.components.size(); ++i)
        out.push_back({mix.weights[i], mix.components[i]});
      return out;
    }
  }
  throw InternalError("ergodic_decomposition: unknown variant");
}

}  // namespace corrset
