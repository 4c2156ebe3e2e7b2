#ifndef CORRSET_WORD_HPP
#define CORRSET_WORD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace corrset {

// A finite binary word, bit-packed 64 per limb, bit i of the word at bit
// (i % 64) of limb (i / 64).
class Word {
 public:
  Word() = default;

  static Word from_bits(std::string_view zero_one_text);
  static Word filled(std::uint64_t n, bool bit);

  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool operator[](std::uint64_t i) const {
    return (limbs_[i >> 6] >> (i & 63)) & 1u;
  }

  void push_back(bool bit);
  void append(const Word& w) { append_cyclic(w, 0, w.size()); }
  // Append n bits of w^infinity starting at offset (w nonempty).
  void append_cyclic(const Word& w, std::uint64_t offset, std::uint64_t n);
  void reserve(std::uint64_t bits) { limbs_.reserve((bits >> 6) + 1); }

  // 64 bits starting at pos, zero-padded past the end.
  std::uint64_t read64(std::uint64_t pos) const;
  // 64 bits starting at pos, reading the word cyclically.
  std::uint64_t read64_cyclic(std::uint64_t pos) const;

  std::uint64_t count_ones(std::uint64_t begin, std::uint64_t end) const;

  Word prefix(std::uint64_t n) const;
  Word reversed() const;

  std::string to_string() const;
  bool operator==(const Word& o) const { return size_ == o.size_ && limbs_ == o.limbs_; }

  const std::vector<std::uint64_t>& limbs() const { return limbs_; }

 private:
  std::vector<std::uint64_t> limbs_;
  std::uint64_t size_ = 0;
};

// Multiset of length-k windows of w. Block ids are lexicographic: the window
// w_i .. w_{i+k-1} has id with w_i as the most significant bit. Requires
// 1 <= k <= 24 (the count table has 2^k entries).
//
// cyclic: windows at every start position, indices mod |w| (requires |w| >= 1).
// windowed: windows at start positions 0..n_windows-1 read flat (requires
// |w| >= n_windows + k - 1).
std::vector<std::int64_t> block_counts_cyclic(const Word& w, int k);
std::vector<std::int64_t> block_counts_window(const Word& w, int k,
                                              std::uint64_t n_windows);

}  // namespace corrset

#endif
