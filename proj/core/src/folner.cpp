#include "corrset/folner.hpp"

#include <algorithm>

#include "corrset/errors.hpp"

namespace corrset {

FolnerSequence FolnerSequence::initial_intervals() {
  FolnerSequence f;
  f.kind_ = Kind::initial_intervals;
  return f;
}

FolnerSequence FolnerSequence::shifted_intervals(
    std::function<std::uint64_t(int)> offset, std::function<std::uint64_t(int)> length) {
  FolnerSequence f;
  f.kind_ = Kind::shifted_intervals;
  f.offset_ = std::move(offset);
  f.length_ = std::move(length);
  return f;
}

FolnerSequence FolnerSequence::custom(
    std::function<std::vector<std::uint64_t>(int)> generator) {
  FolnerSequence f;
  f.kind_ = Kind::custom;
  f.generator_ = std::move(generator);
  return f;
}

std::pair<std::uint64_t, std::uint64_t> FolnerSequence::interval(int N) const {
  if (N < 1) throw ValidationError("FolnerSequence: N must be >= 1");
  switch (kind_) {
    case Kind::initial_intervals:
      return {0, static_cast<std::uint64_t>(N)};
    case Kind::shifted_intervals: {
      std::uint64_t off = offset_(N), len = length_(N);
      if (len == 0) throw ValidationError("FolnerSequence: empty F_N");
      return {off, off + len};
    }
    default:
      throw ValidationError("FolnerSequence: custom sequence has no interval form");
  }
}

std::vector<std::uint64_t> FolnerSequence::set(int N) const {
  if (kind_ == Kind::custom) {
    auto s = generator_(N);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw ValidationError("FolnerSequence: empty F_N");
    return s;
  }
  auto [lo, hi] = interval(N);
  std::vector<std::uint64_t> s;
  s.reserve(hi - lo);
  for (std::uint64_t x = lo; x < hi; ++x) s.push_back(x);
  return s;
}

std::uint64_t FolnerSequence::size(int N) const {
  if (kind_ == Kind::custom) return set(N).size();
  auto [lo, hi] = interval(N);
  return hi - lo;
}

}  // namespace corrset
