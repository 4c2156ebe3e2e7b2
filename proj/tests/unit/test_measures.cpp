#include "corrset/measure.hpp"

#include "corrset/errors.hpp"
#include "doctest.h"

using namespace corrset;

namespace {

ShiftMeasure z6_system() {
  // Z/6 rotation with A = {0,1,2}
  return ShiftMeasure::finite_mps(
      std::vector<Rat>(6, Rat(1, 6)), {1, 2, 3, 4, 5, 0},
      {true, true, true, false, false, false});
}

ShiftMeasure spec_markov() {
  return ShiftMeasure::labeled_markov({{Rat(2, 3), Rat(1, 3)}, {Rat(1, 4), Rat(3, 4)}},
                                      {Rat(3, 7), Rat(4, 7)}, {false, true});
}

ShiftMeasure orbit(const char* bits) {
  return ShiftMeasure::periodic_orbit(Word::from_bits(bits));
}

ShiftMeasure sqrt2_rotation() {
  Real alpha = sqrt(Real(2)) - 1;
  return ShiftMeasure::rotation_coding(alpha, Real(0), Real(1) / 2);
}

// brute-force oracle for finite systems: iterate T literally
Rat mps_oracle(const std::vector<Rat>& weights, const std::vector<std::size_t>& perm,
               const std::vector<bool>& in_A, const Cylinder& c) {
  Rat total = 0;
  for (std::size_t x = 0; x < weights.size(); ++x) {
    bool ok = true;
    for (const auto& con : c.constraints()) {
      std::size_t y = x;
      for (std::uint64_t step = 0; step < con.pos; ++step) y = perm[y];
      if (in_A[y] != con.symbol) {
        ok = false;
        break;
      }
    }
    if (ok) total += weights[x];
  }
  return total;
}

}  // namespace

TEST_CASE("bernoulli cylinder measures") {
  auto nu = ShiftMeasure::bernoulli(Rat(1, 2));
  CHECK(cylinder_measure(nu, Cylinder{{0, true}, {2, true}}).rat() == Rat(1, 4));
  CHECK(cylinder_measure(nu, Cylinder()).rat() == Rat(1));
  auto nu3 = ShiftMeasure::bernoulli(Rat(1, 3));
  CHECK(cylinder_measure(nu3, Cylinder{{0, true}, {1, false}}).rat() == Rat(2, 9));
}

TEST_CASE("finite system examples") {
  auto nu = z6_system();
  CHECK(cylinder_measure(nu, Cylinder{{0, true}, {1, true}}).rat() == Rat(1, 3));
  CHECK(cylinder_measure(nu, Cylinder{{0, true}, {2, true}}).rat() == Rat(1, 6));

  auto nu4 = ShiftMeasure::finite_mps(std::vector<Rat>(4, Rat(1, 4)), {1, 2, 3, 0},
                                      {true, true, false, false});
  CHECK(cylinder_measure(nu4, Cylinder{{0, true}, {1, true}}).rat() == Rat(1, 4));
}

TEST_CASE("rotation coding examples") {
  auto nu = sqrt2_rotation();
  Prob p = cylinder_measure(nu, Cylinder{{0, true}, {1, true}});
  CHECK_FALSE(p.is_exact());
  Real expected = Real(3) / 2 - sqrt(Real(2));  // 1/2 - alpha
  CHECK(abs(p.real() - expected) < Real("1e-40"));
  CHECK(abs(cylinder_measure(nu, Cylinder{{0, true}}).real() - Real(1) / 2) <
        Real("1e-40"));
}

TEST_CASE("mixture example") {
  auto mix = ShiftMeasure::mixture({Rat(1, 2), Rat(1, 2)}, {orbit("01"), orbit("0")});
  CHECK(cylinder_measure(mix, Cylinder{{0, true}}).rat() == Rat(1, 4));
}

TEST_CASE("markov transfer matrix evaluation") {
  auto nu = spec_markov();
  CHECK(cylinder_measure(nu, Cylinder{{0, true}}).rat() == Rat(4, 7));
  // P(1 at 0, 1 at 1) = pi_1 * P_11
  CHECK(cylinder_measure(nu, Cylinder{{0, true}, {1, true}}).rat() ==
        Rat(4, 7) * Rat(3, 4));
  // gap of 2: pi_1 * (P^2)_11
  Rat p2_11 = Rat(1, 3) * Rat(1, 4) + Rat(3, 4) * Rat(3, 4);
  CHECK(cylinder_measure(nu, Cylinder{{0, true}, {2, true}}).rat() == Rat(4, 7) * p2_11);
}

TEST_CASE("correlation wrapper") {
  CHECK(correlation(ShiftMeasure::bernoulli(Rat(1, 3)), {0}).rat() == Rat(1, 3));
  CHECK(correlation(orbit("01"), {0, 1}).rat() == Rat(0));
  CHECK(correlation(orbit("110"), {0, 3}).rat() == Rat(2, 3));
}

TEST_CASE("pushforward equals brute-force enumeration") {
  FiniteMpsData sys;
  sys.weights = {Rat(1, 8), Rat(1, 8), Rat(1, 4), Rat(1, 4), Rat(1, 4)};
  sys.permutation = {1, 0, 3, 4, 2};
  sys.in_A = {true, false, true, true, false};
  auto nu = mps_pushforward(sys);
  for (const auto& c : all_cylinders(5)) {
    CHECK(cylinder_measure(nu, c).rat() ==
          mps_oracle(sys.weights, sys.permutation, sys.in_A, c));
  }
  CHECK(cylinder_measure(nu, Cylinder()).rat() == Rat(1));
}

TEST_CASE("measure axioms on C_4") {
  std::vector<ShiftMeasure> measures{
      ShiftMeasure::bernoulli(Rat(1, 3)), spec_markov(), orbit("110"), z6_system(),
      ShiftMeasure::mixture({Rat(1, 3), Rat(2, 3)},
                            {orbit("01"), ShiftMeasure::bernoulli(Rat(1, 2))})};
  for (const auto& nu : measures) {
    for (const auto& c : all_cylinders(4)) {
      // shift invariance
      CHECK(cylinder_measure(nu, c) == cylinder_measure(nu, c.shifted(1)));
      // Kolmogorov consistency at a fresh position
      std::uint64_t m = c.order();
      CHECK(cylinder_measure(nu, c) ==
            cylinder_measure(nu, c.refined(m, false)) +
                cylinder_measure(nu, c.refined(m, true)));
    }
    Prob total(Rat(0));
    for (const auto& c : fully_specified_cylinders(4)) total += cylinder_measure(nu, c);
    CHECK(total == Prob(Rat(1)));
  }
}

TEST_CASE("validation rejects bad inputs") {
  CHECK_THROWS_AS(ShiftMeasure::bernoulli(Rat(3, 2)), ValidationError);
  // non-stationary vector
  CHECK_THROWS_AS(
      ShiftMeasure::labeled_markov({{Rat(2, 3), Rat(1, 3)}, {Rat(1, 4), Rat(3, 4)}},
                                   {Rat(1, 2), Rat(1, 2)}, {false, true}),
      ValidationError);
  // rows must sum to one
  CHECK_THROWS_AS(ShiftMeasure::labeled_markov({{Rat(1, 2), Rat(1, 3)},
                                                {Rat(1, 4), Rat(3, 4)}},
                                               {Rat(3, 7), Rat(4, 7)}, {false, true}),
                  ValidationError);
  // permutation not a bijection
  CHECK_THROWS_AS(ShiftMeasure::finite_mps({Rat(1, 2), Rat(1, 2)}, {0, 0},
                                           {true, false}),
                  ValidationError);
  // weights not T-invariant (non-uniform on the 2-cycle)
  CHECK_THROWS_AS(ShiftMeasure::finite_mps({Rat(1, 3), Rat(2, 3)}, {1, 0},
                                           {true, false}),
                  ValidationError);
  // interval must be inside [0,1)
  CHECK_THROWS_AS(ShiftMeasure::rotation_coding(Real("0.5"), Real("0.7"), Real("0.2")),
                  ValidationError);
  // mixtures must hold ergodic variants
  CHECK_THROWS_AS(
      ShiftMeasure::mixture({Rat(1)}, {ShiftMeasure::finite_mps(
                                          {Rat(1, 2), Rat(1, 2)}, {0, 1},
                                          {true, false})}),
      ValidationError);
  // no nesting
  auto inner = ShiftMeasure::mixture({Rat(1)}, {orbit("1")});
  CHECK_THROWS_AS(ShiftMeasure::mixture({Rat(1)}, {inner}), ValidationError);
  // weights must sum to 1
  CHECK_THROWS_AS(ShiftMeasure::mixture({Rat(1, 3)}, {orbit("1")}), ValidationError);
}

TEST_CASE("ergodic_decomposition examples") {
  // {a,b,c}: T = (a b)(c), A = {a}
  auto nu = ShiftMeasure::finite_mps({Rat(1, 4), Rat(1, 4), Rat(1, 2)}, {1, 0, 2},
                                     {true, false, false});
  auto comps = ergodic_decomposition(nu);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].weight == Rat(1, 2));
  CHECK(comps[0].measure.variant() == ShiftMeasure::Variant::periodic_orbit);
  CHECK(comps[0].measure.as_orbit().period_word.to_string() == "10");
  CHECK(comps[1].weight == Rat(1, 2));
  CHECK(comps[1].measure.as_orbit().period_word.to_string() == "0");

  auto bern = ShiftMeasure::bernoulli(Rat(1, 3));
  auto single = ergodic_decomposition(bern);
  REQUIRE(single.size() == 1);
  CHECK(single[0].weight == Rat(1));

  auto mix = ShiftMeasure::mixture({Rat(1, 3), Rat(2, 3)},
                                   {orbit("01"), ShiftMeasure::bernoulli(Rat(1, 2))});
  auto pair = ergodic_decomposition(mix);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].weight == Rat(1, 3));
  CHECK(pair[1].weight == Rat(2, 3));
}

TEST_CASE("decomposition is exact on C_6") {
  std::vector<ShiftMeasure> measures{
      z6_system(),
      ShiftMeasure::finite_mps({Rat(1, 4), Rat(1, 4), Rat(1, 2)}, {1, 0, 2},
                               {true, false, false}),
      ShiftMeasure::mixture({Rat(1, 2), Rat(1, 2)}, {orbit("01"), orbit("0")}),
      spec_markov()};
  for (const auto& nu : measures) {
    auto comps = ergodic_decomposition(nu);
    for (const auto& c : all_cylinders(6)) {
      Prob total(Rat(0));
      for (const auto& comp : comps)
        total += Prob(comp.weight) * cylinder_measure(comp.measure, c);
      CHECK(total == cylinder_measure(nu, c));
    }
  }
}

TEST_CASE("reducible stationary chain splits along closed classes") {
  // block-diagonal: flip-flop on {0,1}, absorbing identity on {2}
  auto nu = ShiftMeasure::labeled_markov(
      {{Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}},
      {Rat(1, 4), Rat(1, 4), Rat(1, 2)}, {true, false, true});
  auto comps = ergodic_decomposition(nu);
  REQUIRE(comps.size() == 2);
  Rat total_weight = 0;
  for (const auto& comp : comps) total_weight += comp.weight;
  CHECK(total_weight == Rat(1));
  for (const auto& c : all_cylinders(4)) {
    Prob total(Rat(0));
    for (const auto& comp : comps)
      total += Prob(comp.weight) * cylinder_measure(comp.measure, c);
    CHECK(total == cylinder_measure(nu, c));
  }
}

TEST_CASE("rotation shift invariance within tolerance") {
  auto nu = sqrt2_rotation();
  for (const auto& c : all_cylinders(3)) {
    Real a = cylinder_measure(nu, c).real();
    Real b = cylinder_measure(nu, c.shifted(1)).real();
    CHECK(abs(a - b) < Real("1e-12"));
  }
}

TEST_CASE("is_ergodic_variant") {
  CHECK(is_ergodic_variant(ShiftMeasure::bernoulli(Rat(1, 2)), true));
  CHECK(is_ergodic_variant(orbit("01"), true));
  // flip-flop chain: irreducible but period 2
  auto flip = ShiftMeasure::labeled_markov({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}},
                                           {Rat(1, 2), Rat(1, 2)}, {false, true});
  CHECK(is_ergodic_variant(flip, false));
  CHECK_FALSE(is_ergodic_variant(flip, true));
  CHECK_FALSE(is_ergodic_variant(z6_system(), false));
}
