#include "corrset/empirical.hpp"

#include <random>

#include "corrset/errors.hpp"
#include "doctest.h"

using namespace corrset;

namespace {

Word random_word(std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Word w;
  for (std::uint64_t i = 0; i < n; ++i) w.push_back(rng() & 1);
  return w;
}

Word evens_indicator(std::uint64_t n) {
  Word w;
  for (std::uint64_t i = 0; i < n; ++i) w.push_back(i % 2 == 0);
  return w;
}

// E = union over M of {M^2+1, ..., M^2+M}
Word blocky_indicator(std::uint64_t n) {
  Word out;
  for (std::uint64_t i = 0; i < n; ++i) {
    bool in = false;
    for (std::uint64_t M = 1; M * M < n; ++M)
      if (i >= M * M + 1 && i <= M * M + M) in = true;
    out.push_back(in);
  }
  return out;
}

}  // namespace

TEST_CASE("empirical_measure cyclic examples") {
  Word w = Word::from_bits("0011");
  CHECK(empirical_measure(w, Cylinder{{0, true}}, EmpiricalMode::cyclic) == Rat(1, 2));
  CHECK(empirical_measure(w, Cylinder{{0, true}, {1, true}}, EmpiricalMode::cyclic) ==
        Rat(1, 4));
  Word alt = Word::from_bits("01");
  CHECK(empirical_measure(alt, Cylinder{{0, true}, {1, true}}, EmpiricalMode::cyclic) ==
        Rat(0));
}

TEST_CASE("empirical_measure truncated and errors") {
  Word w = Word::from_bits("0011");
  // truncated windows: starts 0..2 for order 2, denominator 4; only start 2 is "11"
  CHECK(empirical_measure(w, Cylinder{{0, true}, {1, true}}, EmpiricalMode::truncated) ==
        Rat(1, 4));
  CHECK(empirical_measure(w, Cylinder(), EmpiricalMode::truncated) == Rat(1));
  CHECK_THROWS_AS(empirical_measure(Word(), Cylinder(), EmpiricalMode::cyclic),
                  ValidationError);
  Cylinder too_long{{4, true}};
  CHECK_THROWS_AS(empirical_measure(w, too_long, EmpiricalMode::truncated),
                  ValidationError);
}

TEST_CASE("cyclic empirical measure is rotation invariant") {
  Word w = random_word(97, 11);
  Cylinder c{{0, true}, {2, false}, {5, true}};
  Rat base = empirical_measure(w, c, EmpiricalMode::cyclic);
  for (std::uint64_t rot : {1, 13, 50}) {
    Word rotated;
    rotated.append_cyclic(w, rot, w.size());
    CHECK(empirical_measure(rotated, c, EmpiricalMode::cyclic) == base);
  }
}

TEST_CASE("fully specified cylinders sum to one and split") {
  Word w = random_word(83, 12);
  int k = 3;
  Rat total = 0;
  for (const auto& c : fully_specified_cylinders(k))
    total += empirical_measure(w, c, EmpiricalMode::cyclic);
  CHECK(total == Rat(1));

  Cylinder c{{1, true}};
  Rat whole = empirical_measure(w, c, EmpiricalMode::cyclic);
  Rat split = empirical_measure(w, c.refined(3, false), EmpiricalMode::cyclic) +
              empirical_measure(w, c.refined(3, true), EmpiricalMode::cyclic);
  CHECK(whole == split);
}

TEST_CASE("intersection_density examples") {
  Word evens = evens_indicator(12);
  CHECK(intersection_density(evens, {0}, 10) == Rat(1, 2));
  CHECK(intersection_density(evens, {0, 1}, 10) == Rat(0));
  Word w = Word::from_bits("110110110110");
  CHECK(intersection_density(w, {0, 3}, 9) == Rat(2, 3));
  CHECK_THROWS_AS(intersection_density(w, {0, 3}, 10), ValidationError);
  CHECK_THROWS_AS(intersection_density(w, {}, 5), ValidationError);
}

TEST_CASE("intersection_density equals windowed count of the all-ones cylinder") {
  Word w = random_word(140, 13);
  std::vector<std::uint64_t> shifts{1, 4, 9};
  std::uint64_t N = 100;
  Rat lhs = intersection_density(w, shifts, N);
  Cylinder c = Cylinder::all_ones(shifts);
  CHECK(lhs == Rat(Int(count_matches_window(w, c, N)), Int(N)));
}

TEST_CASE("upper_density along initial intervals: evens") {
  Word evens = evens_indicator(64);
  auto rows = upper_density(evens, FolnerSequence::initial_intervals(), 50);
  for (const auto& [N, value] : rows)
    CHECK(value == Rat(Int((N + 1) / 2), Int(N)));
}

TEST_CASE("upper_density of the blocky set") {
  // footnote example: along F_N = {N^2+1..N^2+N} the density is exactly 1
  std::uint64_t len = 26 * 26;
  Word w = blocky_indicator(len);
  auto shifted = FolnerSequence::shifted_intervals(
      [](int N) { return static_cast<std::uint64_t>(N) * N + 1; },
      [](int N) { return static_cast<std::uint64_t>(N); });
  for (const auto& [N, value] : upper_density(w, shifted, 24)) {
    (void)N;
    CHECK(value == Rat(1));
  }

  // along initial intervals the trajectory approaches 1/2
  std::uint64_t probe = 600;
  Word w2 = blocky_indicator(probe + 1);
  auto rows = upper_density(w2, FolnerSequence::initial_intervals(),
                            static_cast<int>(probe));
  // independent oracle: direct count of E within [0, N)
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < probe; ++i) count += w2[i] ? 1 : 0;
  CHECK(rows.back().second == Rat(Int(count), Int(probe)));
  double v = static_cast<double>(rows.back().second.convert_to<double>());
  CHECK(v > 0.40);
  CHECK(v < 0.52);
}

TEST_CASE("upper_density errors when the prefix is too short") {
  Word w = evens_indicator(10);
  CHECK_THROWS_AS(upper_density(w, FolnerSequence::initial_intervals(), 11),
                  ValidationError);
}

TEST_CASE("folner_defect examples") {
  CHECK(folner_defect(FolnerSequence::initial_intervals(), 1, 100) == Rat(2, 100));
  auto shifted = FolnerSequence::shifted_intervals(
      [](int N) { return static_cast<std::uint64_t>(N) * N; },
      [](int N) { return static_cast<std::uint64_t>(N); });
  CHECK(folner_defect(shifted, 2, 50) == Rat(4, 50));
  auto evens = FolnerSequence::custom([](int N) {
    std::vector<std::uint64_t> s;
    for (int i = 0; i < N; ++i) s.push_back(2 * static_cast<std::uint64_t>(i));
    return s;
  });
  CHECK(folner_defect(evens, 1, 7) == Rat(2));
  CHECK(folner_defect(evens, 1, 123) == Rat(2));
}
