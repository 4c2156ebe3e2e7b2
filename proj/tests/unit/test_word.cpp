#include "corrset/word.hpp"

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

}  // namespace

TEST_CASE("from_bits round trip and validation") {
  Word w = Word::from_bits("0011");
  CHECK(w.size() == 4);
  CHECK(w.to_string() == "0011");
  CHECK_FALSE(w[0]);
  CHECK(w[2]);
  CHECK_THROWS_AS(Word::from_bits("10x"), ValidationError);
  CHECK(Word::from_bits("").empty());
}

TEST_CASE("filled") {
  Word ones = Word::filled(70, true);
  CHECK(ones.size() == 70);
  CHECK(ones.count_ones(0, 70) == 70);
  Word zeros = Word::filled(3, false);
  CHECK(zeros.count_ones(0, 3) == 0);
}

TEST_CASE("read64 matches bit-by-bit reads") {
  Word w = random_word(300, 1);
  for (std::uint64_t pos : {std::uint64_t(0), std::uint64_t(1), std::uint64_t(63),
                            std::uint64_t(64), std::uint64_t(200), std::uint64_t(290)}) {
    std::uint64_t chunk = w.read64(pos);
    for (int b = 0; b < 64; ++b) {
      bool expected = pos + b < w.size() ? w[pos + b] : false;
      CHECK(((chunk >> b) & 1) == (expected ? 1u : 0u));
    }
  }
}

TEST_CASE("read64_cyclic wraps") {
  Word w = Word::from_bits("1101");
  std::uint64_t chunk = w.read64_cyclic(2);
  for (int b = 0; b < 64; ++b)
    CHECK(((chunk >> b) & 1) == (w[(2 + b) % 4] ? 1u : 0u));
}

TEST_CASE("append_cyclic equals naive repetition") {
  Word src = Word::from_bits("10110");
  Word got;
  got.append_cyclic(src, 3, 137);
  Word want;
  for (std::uint64_t i = 0; i < 137; ++i) want.push_back(src[(3 + i) % 5]);
  CHECK(got == want);
}

TEST_CASE("append joins across limb boundaries") {
  Word a = random_word(70, 2), b = random_word(130, 3);
  Word joined = a;
  joined.append(b);
  REQUIRE(joined.size() == 200);
  for (std::uint64_t i = 0; i < 70; ++i) CHECK(joined[i] == a[i]);
  for (std::uint64_t i = 0; i < 130; ++i) CHECK(joined[70 + i] == b[i]);
}

TEST_CASE("count_ones on ranges") {
  Word w = random_word(500, 4);
  std::uint64_t naive = 0;
  for (std::uint64_t i = 100; i < 400; ++i) naive += w[i];
  CHECK(w.count_ones(100, 400) == naive);
  CHECK(w.count_ones(10, 10) == 0);
  CHECK_THROWS_AS(w.count_ones(0, 501), ValidationError);
}

TEST_CASE("prefix and reversed") {
  Word w = Word::from_bits("110010");
  CHECK(w.prefix(3).to_string() == "110");
  CHECK(w.reversed().to_string() == "010011");
  CHECK_THROWS_AS(w.prefix(7), ValidationError);
}

TEST_CASE("block counts match naive window enumeration") {
  Word w = random_word(257, 5);
  for (int k : {1, 2, 3, 7}) {
    auto cyclic = block_counts_cyclic(w, k);
    std::vector<std::int64_t> naive(std::size_t(1) << k, 0);
    for (std::uint64_t i = 0; i < w.size(); ++i) {
      std::uint64_t id = 0;
      for (int t = 0; t < k; ++t)
        id = (id << 1) | (w[(i + t) % w.size()] ? 1 : 0);
      ++naive[id];
    }
    CHECK(cyclic == naive);

    std::uint64_t n_windows = w.size() - k + 1;
    auto windowed = block_counts_window(w, k, n_windows);
    std::vector<std::int64_t> naive_w(std::size_t(1) << k, 0);
    for (std::uint64_t i = 0; i < n_windows; ++i) {
      std::uint64_t id = 0;
      for (int t = 0; t < k; ++t) id = (id << 1) | (w[i + t] ? 1 : 0);
      ++naive_w[id];
    }
    CHECK(windowed == naive_w);
  }
}

TEST_CASE("block counts when the order exceeds the word length") {
  Word w = Word::from_bits("01");
  auto counts = block_counts_cyclic(w, 3);  // windows read cyclically
  CHECK(counts[0b010] == 1);
  CHECK(counts[0b101] == 1);
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  CHECK(total == 2);
}
