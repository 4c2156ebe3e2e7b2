#include <sstream>

#include "corrset/empirical.hpp"
#include "corrset/errors.hpp"
#include "corrset/report.hpp"
#include "corrset/schedule.hpp"
#include "corrset/stream.hpp"
#include "doctest.h"

using namespace corrset;

namespace {

ShiftMeasure orbit(const char* bits) {
  return ShiftMeasure::periodic_orbit(Word::from_bits(bits));
}

ShiftMeasure two_orbit_mixture() {
  return ShiftMeasure::mixture({Rat(1, 2), Rat(1, 2)}, {orbit("01"), orbit("0")});
}

}  // namespace

TEST_CASE("choose_block_lengths reproduces the worked thresholds") {
  auto L = choose_block_lengths({Int(10), Int(40), Int(600), Int(1000)});
  REQUIRE(L.size() == 3);
  CHECK(L[0] == Int(41));
  CHECK(L[1] == Int(1201));
  CHECK(L[2] == Int(3001));
}

TEST_CASE("choose_block_lengths: single stage") {
  auto L = choose_block_lengths({Int(2), Int(7)});
  REQUIRE(L.size() == 1);
  CHECK(L[0] == Int(8));  // max(R_1, 1*R_2+1, 1)
}

TEST_CASE("block lengths grow strictly from stage two on") {
  std::vector<Int> R{Int(5), Int(9), Int(20), Int(21), Int(22), Int(23), Int(24)};
  auto L = choose_block_lengths(R);
  for (std::size_t j = 1; j < L.size(); ++j) CHECK(L[j] > L[j - 1]);
}

TEST_CASE("stage_of over explicit boundaries") {
  std::vector<Int> S{Int(41), Int(41 + 1201), Int(41 + 1201 + 3001)};
  auto p = stage_of(Int(41), S);
  CHECK(p.k == 1);
  CHECK(p.remainder == Int(0));
  p = stage_of(Int(1000), S);
  CHECK(p.k == 1);
  CHECK(p.remainder == Int(959));
  p = stage_of(Int(1242), S);
  CHECK(p.k == 2);
  CHECK(p.remainder == Int(0));
  p = stage_of(Int(7), S);
  CHECK(p.k == 0);
  CHECK(p.remainder == Int(7));
  CHECK_THROWS_AS(stage_of(Int(999999), S), ValidationError);
}

TEST_CASE("build_schedule asserts the three conditions per stage") {
  auto sched = build_schedule(two_orbit_mixture(), 6);
  REQUIRE(sched.built_stages() == 6);
  Int S_prev = 0;
  for (int j = 1; j <= 6; ++j) {
    const Stage& st = sched.stage(j);
    CHECK(st.eps == Rat(1, j));
    CHECK(st.approximant.k == j);
    CHECK(st.L >= st.R);
    Int R_next = j < 6 ? sched.stage(j + 1).R : sched.lookahead_R();
    CHECK(Int(j) * R_next < st.L);
    CHECK(Int(j) * st.L > Int(j - 1) * st.S);
    CHECK(st.S == S_prev + st.L);
    S_prev = st.S;
  }
}

TEST_CASE("stream of the all-ones orbit is all ones") {
  BitStream stream(orbit("1"));
  Word w = stream.prefix(5000);
  CHECK(w.count_ones(0, w.size()) == w.size());
}

TEST_CASE("stream prefixes are consistent and deterministic") {
  BitStream a(two_orbit_mixture());
  BitStream b(two_orbit_mixture());
  Word w1 = a.prefix(4096);
  Word w2 = b.prefix(9000);
  CHECK(w2.prefix(4096) == w1);
  Word w3 = a.prefix(9000);
  CHECK(w3 == w2);
}

TEST_CASE("alternating orbit stream approaches density one half") {
  BitStream stream(orbit("01"));
  Word w = stream.prefix(20000);
  Rat d = intersection_density(w, {0}, 19000);
  Rat err = d - Rat(1, 2);
  if (err < 0) err = -err;
  CHECK(err < Rat(1, 20));
  // adjacent ones never appear: every block is a prefix of (01)^inf
  CHECK(intersection_density(w, {0, 1}, 19000) == Rat(0));
}

TEST_CASE("mixture stream realizes the mixed correlations") {
  BitStream stream(two_orbit_mixture());
  std::uint64_t N = 60000;
  Word w = stream.prefix(N + 1);
  Rat d = intersection_density(w, {0}, N);
  Rat err = d - Rat(1, 4);
  if (err < 0) err = -err;
  CHECK(err < Rat(1, 15));
  CHECK(intersection_density(w, {0, 1}, N) == Rat(0));
}

TEST_CASE("emit chunks concatenate to the prefix") {
  BitStream stream(two_orbit_mixture());
  Word direct = stream.prefix(10000);
  Word chunked;
  stream.emit(10000, 512, [&](const Word& c) { chunked.append(c); });
  CHECK(chunked == direct);
}

TEST_CASE("packed prefix file layout") {
  // bits 10000001 01 -> header 10 LE, bytes 0x81, 0x02
  Word w = Word::from_bits("1000000101");
  std::ostringstream os;
  write_prefix_packed(os, w);
  std::string bytes = os.str();
  REQUIRE(bytes.size() == 10);
  CHECK(static_cast<unsigned char>(bytes[0]) == 10);
  for (int i = 1; i < 8; ++i) CHECK(bytes[i] == 0);
  CHECK(static_cast<unsigned char>(bytes[8]) == 0x81);
  CHECK(static_cast<unsigned char>(bytes[9]) == 0x02);
  std::istringstream is(bytes);
  CHECK(read_prefix_packed(is) == w);
}

TEST_CASE("packed round trip through the streaming writer") {
  BitStream stream(orbit("110"));
  std::ostringstream os;
  write_prefix_packed(os, stream, 7777, 1024);
  std::istringstream is(os.str());
  Word from_file = read_prefix_packed(is);
  BitStream again(orbit("110"));
  CHECK(from_file == again.prefix(7777));
}

TEST_CASE("ascii round trip") {
  Word w = Word::from_bits("011010");
  std::ostringstream os;
  write_prefix_ascii(os, w);
  CHECK(os.str() == "011010\n");
  std::istringstream is(os.str());
  CHECK(read_prefix_ascii(is) == w);
}

TEST_CASE("convergence report rows carry the envelope data") {
  BitStream stream(orbit("1"));
  stream.schedule().ensure_coverage(Int(3000), 32);
  std::vector<std::uint64_t> grid;
  for (int j = 1; j <= stream.schedule().built_stages(); ++j) {
    if (stream.schedule().stage(j).S > Int(3000)) break;
    grid.push_back(stream.schedule().stage(j).S.convert_to<std::uint64_t>());
  }
  REQUIRE(!grid.empty());
  auto report = convergence_report(stream.measure(), stream, {{0}, {0, 2}}, grid);
  for (const auto& row : report.rows) {
    CHECK(row.abs_error == Prob(Rat(0)));  // the all-ones orbit is exact at every N
    CHECK(row.stage >= 1);
  }
  std::string csv = to_csv(report);
  CHECK(csv.find("N,shifts,empirical,exact,abs_error,stage") == 0);
  CHECK(csv.find("0;2") != std::string::npos);
}

TEST_CASE("stage_of on a built schedule matches boundaries") {
  auto sched = build_schedule(orbit("10"), 3);
  Int S1 = sched.stage(1).S;
  auto p = stage_of(S1, sched);
  CHECK(p.k == 1);
  CHECK(p.remainder == Int(0));
  auto q = stage_of(S1 + 5, sched);
  CHECK(q.k == 1);
  CHECK(q.remainder == Int(5));
}
