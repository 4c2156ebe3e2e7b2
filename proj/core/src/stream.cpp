#include "corrset/stream.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "corrset/errors.hpp"

namespace corrset {

BitStream::BitStream(ShiftMeasure nu, SynthesisOptions opts, int max_stages)
    : schedule_(std::move(nu), std::move(opts)), max_stages_(max_stages) {}

void BitStream::emit(std::uint64_t n, std::uint64_t chunk_bits,
                     const std::function<void(const Word&)>& sink) {
  if (n == 0) {
    sink(Word());
    return;
  }
  if (chunk_bits == 0) throw ValidationError("BitStream::emit: zero chunk size");
  schedule_.ensure_coverage(Int(n), max_stages_);
  Word chunk;
  chunk.reserve(std::min<std::uint64_t>(chunk_bits, n));
  std::uint64_t produced = 0;
  for (int j = 1; produced < n; ++j) {
    const Stage& st = schedule_.stage(j);
    Int remaining(n - produced);
    std::uint64_t take = st.L >= remaining
                             ? (n - produced)
                             : st.L.convert_to<std::uint64_t>();
    const Word& x = st.approximant.x;
    std::uint64_t off = 0;
    while (off < take) {
      std::uint64_t room = chunk_bits - chunk.size();
      std::uint64_t piece = std::min(room, take - off);
      chunk.append_cyclic(x, off, piece);
      off += piece;
      if (chunk.size() == chunk_bits) {
        sink(chunk);
        chunk = Word();
        chunk.reserve(std::min<std::uint64_t>(chunk_bits, n - produced - off));
      }
    }
    produced += take;
  }
  if (!chunk.empty()) sink(chunk);
}

Word BitStream::prefix(std::uint64_t n) {
  Word out;
  out.reserve(n);
  emit(n, std::max<std::uint64_t>(n, 64), [&](const Word& chunk) { out.append(chunk); });
  return out;
}

BitStream generic_stream(const ShiftMeasure& nu, SynthesisOptions opts, int max_stages) {
  return BitStream(nu, std::move(opts), max_stages);
}

namespace {

void write_header(std::ostream& os, std::uint64_t bits) {
  for (int b = 0; b < 8; ++b)
    os.put(static_cast<char>((bits >> (8 * b)) & 0xff));
}

void write_bits(std::ostream& os, const Word& w) {
  std::uint64_t nbytes = (w.size() + 7) / 8;
  for (std::uint64_t i = 0; i < nbytes; ++i) {
    std::uint64_t limb = w.limbs()[i >> 3];
    os.put(static_cast<char>((limb >> (8 * (i & 7))) & 0xff));
  }
}

}  // namespace

void write_prefix_packed(std::ostream& os, const Word& w) {
  write_header(os, w.size());
  write_bits(os, w);
}

void write_prefix_packed(std::ostream& os, BitStream& stream, std::uint64_t bits,
                         std::uint64_t chunk_bits) {
  if (chunk_bits % 64 != 0)
    throw ValidationError("write_prefix_packed: chunk size must be limb aligned");
  write_header(os, bits);
  stream.emit(bits, chunk_bits, [&](const Word& chunk) { write_bits(os, chunk); });
}

Word read_prefix_packed(std::istream& is) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) {
    int c = is.get();
    if (c == EOF) throw ValidationError("prefix file: truncated header");
    bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * b);
  }
  Word w;
  w.reserve(bits);
  std::uint64_t nbytes = (bits + 7) / 8;
  for (std::uint64_t i = 0; i < nbytes; ++i) {
    int c = is.get();
    if (c == EOF) throw ValidationError("prefix file: truncated payload");
    auto byte = static_cast<unsigned char>(c);
    std::uint64_t take = std::min<std::uint64_t>(8, bits - 8 * i);
    for (std::uint64_t b = 0; b < take; ++b) w.push_back((byte >> b) & 1);
  }
  return w;
}

void write_prefix_ascii(std::ostream& os, const Word& w) {
  for (std::uint64_t i = 0; i < w.size(); ++i)
    os.put(w[i] ? '1' : '0');
  os.put('\n');
}

Word read_prefix_ascii(std::istream& is) {
  Word w;
  for (int c = is.get(); c != EOF; c = is.get()) {
    if (c == '0')
      w.push_back(false);
    else if (c == '1')
      w.push_back(true);
    else if (c == '\n' || c == '\r' || c == ' ')
      continue;
    else
      throw ValidationError("prefix file (ascii): unexpected character");
  }
  return w;
}

}  // namespace corrset
