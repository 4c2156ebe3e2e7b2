#include "corrset/spectrum.hpp"

#include <random>

#include "corrset/empirical.hpp"
#include "corrset/errors.hpp"
#include "doctest.h"

using namespace corrset;

namespace {

ShiftMeasure spec_markov() {
  return ShiftMeasure::labeled_markov({{Rat(2, 3), Rat(1, 3)}, {Rat(1, 4), Rat(3, 4)}},
                                      {Rat(3, 7), Rat(4, 7)}, {false, true});
}

std::vector<ShiftMeasure> rational_test_measures() {
  return {
      ShiftMeasure::bernoulli(Rat(1, 2)),
      ShiftMeasure::bernoulli(Rat(1, 3)),
      spec_markov(),
      ShiftMeasure::periodic_orbit(Word::from_bits("110")),
      ShiftMeasure::finite_mps(std::vector<Rat>(6, Rat(1, 6)), {1, 2, 3, 4, 5, 0},
                               {true, true, true, false, false, false}),
      ShiftMeasure::mixture(
          {Rat(1, 2), Rat(1, 2)},
          {ShiftMeasure::periodic_orbit(Word::from_bits("01")),
           ShiftMeasure::periodic_orbit(Word::from_bits("0"))}),
  };
}

Word random_word(std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Word w;
  for (std::uint64_t i = 0; i < n; ++i) w.push_back(rng() & 1);
  return w;
}

}  // namespace

TEST_CASE("block spectrum agrees with cylinder_measure on every block") {
  for (const auto& nu : rational_test_measures()) {
    for (int k : {1, 2, 5}) {
      auto s = block_spectrum(nu, k);
      Int denom = wide_to_int(s.denom);
      Wide sum = 0;
      for (std::uint64_t b = 0; b < (1ull << k); ++b) {
        sum += s.num[b];
        Rat expected = cylinder_measure(nu, block_cylinder(k, b)).rat();
        CHECK(Rat(wide_to_int(s.num[b]), denom) == expected);
      }
      CHECK(sum == s.denom);
    }
  }
}

TEST_CASE("rotation real spectrum agrees with arc evaluation") {
  Real alpha = sqrt(Real(2)) - 1;
  auto nu = ShiftMeasure::rotation_coding(alpha, Real(0), Real(1) / 2);
  int k = 4;
  auto spectrum = block_spectrum_real(nu, k);
  Real total = 0;
  for (std::uint64_t b = 0; b < (1ull << k); ++b) {
    total += spectrum[b];
    Real expected = cylinder_measure(nu, block_cylinder(k, b)).real();
    CHECK(abs(spectrum[b] - expected) < Real("1e-40"));
  }
  CHECK(abs(total - 1) < Real("1e-40"));
}

TEST_CASE("real spectrum of rational measures matches the exact one") {
  auto nu = spec_markov();
  auto exact = block_spectrum(nu, 3);
  auto real = block_spectrum_real(nu, 3);
  Real denom = Real(wide_to_int(exact.denom));
  for (std::size_t b = 0; b < real.size(); ++b)
    CHECK(abs(real[b] - Real(wide_to_int(exact.num[b])) / denom) < Real("1e-45"));
}

TEST_CASE("exact deviation fold equals brute force over all cylinders") {
  Word w = random_word(113, 21);
  auto nu = ShiftMeasure::bernoulli(Rat(1, 3));
  int k = 4;
  auto counts = block_counts_cyclic(w, k);
  auto dev = block_deviation(counts, static_cast<std::int64_t>(w.size()),
                             block_spectrum(nu, k), kDefaultExactMaxOrder);
  REQUIRE(dev.exact_max);
  Rat brute = 0;
  for (const auto& c : all_cylinders(k)) {
    Rat emp = empirical_measure(w, c, EmpiricalMode::cyclic);
    Rat err = emp - cylinder_measure(nu, c).rat();
    if (err < 0) err = -err;
    if (err > brute) brute = err;
  }
  CHECK(dev.value == brute);
  CHECK(dev.max_block <= dev.value);
}

TEST_CASE("bounded deviation dominates the exact maximum") {
  Word w = random_word(211, 22);
  auto nu = spec_markov();
  int k = 5;
  auto counts = block_counts_cyclic(w, k);
  auto spectrum = block_spectrum(nu, k);
  auto exact = block_deviation(counts, static_cast<std::int64_t>(w.size()), spectrum,
                               kDefaultExactMaxOrder);
  auto bound = block_deviation(counts, static_cast<std::int64_t>(w.size()), spectrum, 0);
  REQUIRE(exact.exact_max);
  REQUIRE_FALSE(bound.exact_max);
  CHECK(bound.value >= exact.value);
}

TEST_CASE("deviation between two count vectors") {
  Word a = random_word(64, 23), b = random_word(96, 24);
  int k = 3;
  auto ca = block_counts_cyclic(a, k);
  auto cb = block_counts_cyclic(b, k);
  auto dev = block_deviation(ca, 64, cb, 96, k, kDefaultExactMaxOrder);
  Rat brute = 0;
  for (const auto& c : all_cylinders(k)) {
    Rat err = empirical_measure(a, c, EmpiricalMode::cyclic) -
              empirical_measure(b, c, EmpiricalMode::cyclic);
    if (err < 0) err = -err;
    if (err > brute) brute = err;
  }
  CHECK(dev.value == brute);
  CHECK(block_deviation(ca, 64, ca, 64, k, 8).value == Rat(0));
}
