#include "corrset/reclab.hpp"

#include "corrset/errors.hpp"
#include "doctest.h"

using namespace corrset;

namespace {

ShiftMeasure orbit(const char* bits) {
  return ShiftMeasure::periodic_orbit(Word::from_bits(bits));
}

Word evens_indicator(std::uint64_t n) {
  Word w;
  for (std::uint64_t i = 0; i < n; ++i) w.push_back(i % 2 == 0);
  return w;
}

}  // namespace

TEST_CASE("shift set enumerators") {
  CHECK(ShiftSet::squares().enumerate(10) == std::vector<std::uint64_t>{1, 4, 9});
  CHECK(ShiftSet::multiples(3).enumerate(10) == std::vector<std::uint64_t>{3, 6, 9});
  // odds as 1 + 2n
  CHECK(ShiftSet::polynomial({1, 2}).enumerate(7) ==
        std::vector<std::uint64_t>{1, 3, 5, 7});
  // n^2 - 2 takes the values -2, -1, 2, 7, 14: only positives survive
  CHECK(ShiftSet::polynomial({-2, 0, 1}).enumerate(15) ==
        std::vector<std::uint64_t>{2, 7, 14});
  CHECK(ShiftSet::explicit_list({5, 1, 3, 5}).enumerate(4) ==
        std::vector<std::uint64_t>{1, 3});
  CHECK_THROWS_AS(ShiftSet::polynomial({3, -1}), ValidationError);
}

TEST_CASE("recurrence_witness examples") {
  auto res = recurrence_witness(ShiftMeasure::bernoulli(Rat(1, 2)), ShiftSet::squares(), 10);
  CHECK(res.witness == 1);
  CHECK(res.searched_up_to == 10);

  res = recurrence_witness(orbit("01"), ShiftSet::explicit_list({1, 3, 5}), 5);
  CHECK_FALSE(res.witness.has_value());

  res = recurrence_witness(orbit("01"), ShiftSet::squares(), 10);
  CHECK(res.witness == 4);
}

TEST_CASE("nice_recurrence_witness examples") {
  auto res = nice_recurrence_witness(ShiftMeasure::bernoulli(Rat(2, 5)),
                                     ShiftSet::squares(), Rat(1, 100), 50);
  CHECK(res.witness == 1);

  res = nice_recurrence_witness(orbit("01"), ShiftSet::polynomial({1, 2}), Rat(1, 8), 99);
  CHECK_FALSE(res.witness.has_value());

  auto mix = ShiftMeasure::mixture({Rat(1, 2), Rat(1, 2)}, {orbit("01"), orbit("0")});
  res = nice_recurrence_witness(mix, ShiftSet::explicit_list({2}), Rat(1, 100), 2);
  CHECK(res.witness == 2);
}

TEST_CASE("nice_intersectivity_witness examples") {
  Word evens = evens_indicator(1200);
  auto res = nice_intersectivity_witness(evens, ShiftSet::explicit_list({2}),
                                         Rat(1, 100), 2, 1000);
  CHECK(res.witness == 2);

  res = nice_intersectivity_witness(evens, ShiftSet::explicit_list({1}), Rat(1, 8), 1,
                                    1000);
  CHECK_FALSE(res.witness.has_value());

  Word ones = Word::filled(1100, true);
  res = nice_intersectivity_witness(ones, ShiftSet::explicit_list({7, 9}), Rat(1, 10),
                                    9, 1000);
  CHECK(res.witness == 7);

  CHECK_THROWS_AS(
      nice_intersectivity_witness(evens_indicator(10), ShiftSet::squares(), Rat(1, 2), 9, 5),
      ValidationError);
}

TEST_CASE("witness monotonicity in eps and r_max") {
  auto nu = orbit("1100");
  auto R = ShiftSet::squares();
  auto tight = nice_recurrence_witness(nu, R, Rat(1, 100), 100);
  auto loose = nice_recurrence_witness(nu, R, Rat(1, 2), 100);
  if (tight.witness && loose.witness) CHECK(*loose.witness <= *tight.witness);
  if (tight.witness) CHECK(loose.witness.has_value());
  auto small_range = nice_recurrence_witness(nu, R, Rat(1, 100), 3);
  if (small_range.witness) {
    REQUIRE(tight.witness.has_value());
    CHECK(*tight.witness == *small_range.witness);
  }
}

TEST_CASE("r3_set examples") {
  auto all = r3_set(ShiftMeasure::bernoulli(Rat(1, 2)), Rat(1, 100), 10);
  CHECK(all == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

  auto evens = r3_set(orbit("01"), Rat(1, 16), 8);
  CHECK(evens == std::vector<std::uint64_t>{2, 4, 6, 8});

  auto z3 = ShiftMeasure::finite_mps(std::vector<Rat>(3, Rat(1, 3)), {1, 2, 0},
                                     {true, false, false});
  CHECK(r3_set(z3, Rat(1, 100), 9) == std::vector<std::uint64_t>{3, 6, 9});
}

TEST_CASE("transfer experiment: odd shifts on the alternating orbit yield none") {
  auto report = transfer_experiment(orbit("01"), ShiftSet::polynomial({1, 2}),
                                    Rat(1, 8), 99, 100000);
  CHECK_FALSE(report.measure_side.witness.has_value());
  CHECK_FALSE(report.set_side.witness.has_value());
  CHECK(report.witnesses_agree);
  CHECK(report.gaps_below_half_eps);
}

TEST_CASE("transfer experiment: fair coin with squares finds r = 1 on both sides") {
  auto report = transfer_experiment(ShiftMeasure::bernoulli(Rat(1, 2)),
                                    ShiftSet::squares(), Rat(1, 8), 99, 100000);
  CHECK(report.measure_side.witness == 1);
  CHECK(report.set_side.witness == 1);
  CHECK(report.witnesses_agree);
}

TEST_CASE("transfer experiment: finite rotation with squares") {
  auto z6 = ShiftMeasure::finite_mps(std::vector<Rat>(6, Rat(1, 6)), {1, 2, 3, 4, 5, 0},
                                     {true, true, true, false, false, false});
  auto report = transfer_experiment(z6, ShiftSet::squares(), Rat(1, 10), 36, 50000);
  CHECK(report.measure_side.witness == 1);
  CHECK(report.set_side.witness == 1);
}
