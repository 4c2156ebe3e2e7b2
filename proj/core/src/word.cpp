#include "corrset/word.hpp"

#include <bit>
#include <stdexcept>

#include "corrset/errors.hpp"

namespace corrset {

Word Word::from_bits(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c == '0')
      w.push_back(false);
    else if (c == '1')
      w.push_back(true);
    else if (c == ' ' || c == '_')
      continue;
    else
      throw ValidationError("Word::from_bits: expected only '0'/'1', got '" +
                            std::string(1, c) + "'");
  }
  return w;
}

Word Word::filled(std::uint64_t n, bool bit) {
  Word w;
  w.size_ = n;
  w.limbs_.assign((n + 63) >> 6, bit ? ~0ull : 0ull);
  if (bit && (n & 63)) w.limbs_.back() &= (1ull << (n & 63)) - 1;
  return w;
}

void Word::push_back(bool bit) {
  if ((size_ & 63) == 0) limbs_.push_back(0);
  if (bit) limbs_.back() |= 1ull << (size_ & 63);
  ++size_;
}

std::uint64_t Word::read64(std::uint64_t pos) const {
  const std::uint64_t nlimbs = limbs_.size();
  const std::uint64_t li = pos >> 6, off = pos & 63;
  std::uint64_t lo = li < nlimbs ? limbs_[li] : 0;
  if (off == 0) return lo;
  std::uint64_t hi = li + 1 < nlimbs ? limbs_[li + 1] : 0;
  return (lo >> off) | (hi << (64 - off));
}

std::uint64_t Word::read64_cyclic(std::uint64_t pos) const {
  pos %= size_;
  if (pos + 64 <= size_) return read64(pos);
  std::uint64_t v = 0;
  for (int b = 63; b >= 0; --b) {
    std::uint64_t i = pos + static_cast<std::uint64_t>(b);
    if (i >= size_) i -= size_;
    if (i >= size_) i %= size_;  // size_ < 64
    v = (v << 1) | ((*this)[i] ? 1u : 0u);
  }
  return v;
}

void Word::append_cyclic(const Word& w, std::uint64_t offset, std::uint64_t n) {
  if (n == 0) return;
  if (w.empty()) throw ValidationError("Word::append_cyclic: empty source word");
  reserve(size_ + n);
  std::uint64_t pos = offset % w.size();
  std::uint64_t left = n;
  while (left >= 64) {
    std::uint64_t chunk = w.read64_cyclic(pos);
    // splice 64 bits at the current tail
    std::uint64_t off = size_ & 63;
    if (off == 0) {
      limbs_.push_back(chunk);
    } else {
      limbs_.back() |= chunk << off;
      limbs_.push_back(chunk >> (64 - off));
    }
    size_ += 64;
    pos += 64;
    if (pos >= w.size()) pos %= w.size();
    left -= 64;
  }
  for (std::uint64_t i = 0; i < left; ++i) {
    push_back(w[(pos + i) % w.size()]);
  }
}

std::uint64_t Word::count_ones(std::uint64_t begin, std::uint64_t end) const {
  if (begin >= end) return 0;
  if (end > size_) throw ValidationError("Word::count_ones: range past end");
  std::uint64_t total = 0, pos = begin;
  while (pos < end) {
    std::uint64_t li = pos >> 6;
    std::uint64_t lo = pos & 63;
    std::uint64_t take = std::min<std::uint64_t>(64 - lo, end - pos);
    std::uint64_t chunk = limbs_[li] >> lo;
    if (take < 64) chunk &= (1ull << take) - 1;
    total += std::popcount(chunk);
    pos += take;
  }
  return total;
}

Word Word::prefix(std::uint64_t n) const {
  if (n > size_) throw ValidationError("Word::prefix: longer than word");
  Word w;
  w.size_ = n;
  w.limbs_.assign(limbs_.begin(), limbs_.begin() + ((n + 63) >> 6));
  if (n & 63) w.limbs_.back() &= (1ull << (n & 63)) - 1;
  return w;
}

Word Word::reversed() const {
  Word w;
  w.reserve(size_);
  for (std::uint64_t i = size_; i-- > 0;) w.push_back((*this)[i]);
  return w;
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(size_);
  for (std::uint64_t i = 0; i < size_; ++i) s.push_back((*this)[i] ? '1' : '0');
  return s;
}

namespace {

void check_block_order(const Word& w, int k) {
  if (k < 1 || k > 24) throw ValidationError("block counts: order must be in [1,24]");
  if (w.empty()) throw ValidationError("block counts: empty word");
}

}  // namespace

std::vector<std::int64_t> block_counts_cyclic(const Word& w, int k) {
  check_block_order(w, k);
  const std::uint64_t n = w.size();
  const std::uint64_t mask = (k == 64) ? ~0ull : ((1ull << k) - 1);
  std::vector<std::int64_t> counts(std::size_t(1) << k, 0);
  // state after consuming bit i = block ending at i (first symbol highest bit)
  std::uint64_t state = 0;
  for (std::uint64_t i = 0; i + 1 < static_cast<std::uint64_t>(k); ++i)
    state = ((state << 1) | (w[i % n] ? 1u : 0u)) & mask;
  for (std::uint64_t start = 0; start < n; ++start) {
    std::uint64_t last = (start + static_cast<std::uint64_t>(k) - 1) % n;
    state = ((state << 1) | (w[last] ? 1u : 0u)) & mask;
    ++counts[state];
  }
  return counts;
}

std::vector<std::int64_t> block_counts_window(const Word& w, int k,
                                              std::uint64_t n_windows) {
  check_block_order(w, k);
  if (w.size() < n_windows + static_cast<std::uint64_t>(k) - 1)
    throw ValidationError("block counts: word too short for requested windows");
  const std::uint64_t mask = (1ull << k) - 1;
  std::vector<std::int64_t> counts(std::size_t(1) << k, 0);
  std::uint64_t state = 0;
  for (int i = 0; i + 1 < k; ++i) state = (state << 1) | (w[i] ? 1u : 0u);
  for (std::uint64_t start = 0; start < n_windows; ++start) {
    state = ((state << 1) | (w[start + k - 1] ? 1u : 0u)) & mask;
    ++counts[state];
  }
  return counts;
}

}  // namespace corrset
