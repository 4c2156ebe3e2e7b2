#ifndef CORRSET_STREAM_HPP
#define CORRSET_STREAM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "corrset/schedule.hpp"
#include "corrset/word.hpp"

namespace corrset {

// The generic point y = x^1|_{L_1} . x^2|_{L_2} . x^3|_{L_3} ... of a
// measure: deterministic, prefix-consistent, extended stage by stage on
// demand. Each block is a truncation of the stage approximant's periodic
// extension.
class BitStream {
 public:
  explicit BitStream(ShiftMeasure nu, SynthesisOptions opts = {},
                     int max_stages = 64);

  // first n bits, materialized
  Word prefix(std::uint64_t n);
  // first n bits pushed through chunks of chunk_bits (last one shorter);
  // memory stays O(chunk + schedule)
  void emit(std::uint64_t n, std::uint64_t chunk_bits,
            const std::function<void(const Word&)>& sink);

  Schedule& schedule() { return schedule_; }
  const ShiftMeasure& measure() const { return schedule_.measure(); }
  int max_stages() const { return max_stages_; }

 private:
  Schedule schedule_;
  int max_stages_;
};

BitStream generic_stream(const ShiftMeasure& nu, SynthesisOptions opts = {},
                         int max_stages = 64);

// Bit-packed prefix file: 8-byte little-endian bit count, then the bits
// 8 per byte, least significant first within each byte.
void write_prefix_packed(std::ostream& os, const Word& w);
void write_prefix_packed(std::ostream& os, BitStream& stream, std::uint64_t bits,
                         std::uint64_t chunk_bits = 1ull << 23);
Word read_prefix_packed(std::istream& is);

// Debug format: one '0'/'1' per bit, one line.
void write_prefix_ascii(std::ostream& os, const Word& w);
Word read_prefix_ascii(std::istream& is);

}  // namespace corrset

#endif
