#pragma once

// Quasiperiod-based encoding of a finite word.
//
// A word covered by q (away from its ends) is split as u . w . v where w
// begins and ends with q. The interior is stored as the jumps between
// successive occurrences of q that are kept; adjacent jumps that are both
// below l(q)/2 are merged, which drops an occurrence but keeps the overlay
// valid. In normal form no two adjacent tokens are both below l(q)/2, so at
// least half of them are >= l(q)/2 and there are at most 4n/l(q) + 2 tokens.
//
// Container layout (little-endian):
//   "QPZ1" | alphabet size u32 | l(q) u32 | n u64 | l(u) u32 | l(v) u32 |
//   q, u, v letters as u32 | jump tokens as u32 until end of data

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include "qw/error.hpp"
#include "qw/match.hpp"
#include "qw/word.hpp"

namespace qw {

struct QpEncoding {
  std::size_t alphabet_size = 0;
  Word quasiperiod;
  Word head; // u
  Word tail; // v
  std::vector<std::uint32_t> tokens;
  std::size_t length = 0; // n

  friend bool operator==(const QpEncoding &, const QpEncoding &) = default;
};

/// Greedy left-to-right merge of adjacent jumps that are both < l(q)/2.
inline std::vector<std::uint32_t> compact_jumps(const std::vector<std::uint32_t> &jumps, std::size_t qlen) {
  auto small = [qlen](std::uint32_t t) { return 2 * static_cast<std::size_t>(t) < qlen; };
  std::vector<std::uint32_t> out;
  out.reserve(jumps.size());
  for (std::uint32_t t : jumps) {
    out.push_back(t);
    while (out.size() >= 2 && small(out.back()) && small(out[out.size() - 2])) {
      std::uint32_t merged = out.back() + out[out.size() - 2];
      out.pop_back();
      out.back() = merged;
    }
  }
  return out;
}

/// True iff no two adjacent tokens are both < l(q)/2.
inline bool in_normal_form(const std::vector<std::uint32_t> &tokens, std::size_t qlen) {
  for (std::size_t i = 1; i < tokens.size(); ++i)
    if (2 * static_cast<std::size_t>(tokens[i - 1]) < qlen && 2 * static_cast<std::size_t>(tokens[i]) < qlen)
      return false;
  return true;
}

inline QpEncoding encode(const Word &text, const Word &q, std::size_t alphabet_size) {
  const std::size_t L = q.size(), n = text.size();
  if (L == 0)
    throw DomainError("quasiperiod must be nonempty");
  if (n < 4 * L)
    throw DomainError("encoding needs a word of length at least 4 l(q)");
  auto pos = occurrence_positions(q, text.span());
  if (pos.empty())
    throw CoverageError("quasiperiod does not occur", 0);
  if (pos.front() > L)
    throw CoverageError("head before the first occurrence is longer than l(q)", 0);
  std::vector<std::uint32_t> jumps;
  for (std::size_t i = 1; i < pos.size(); ++i) {
    if (pos[i] - pos[i - 1] > L)
      throw CoverageError("interior is not covered by the quasiperiod", pos[i - 1] + L);
    jumps.push_back(static_cast<std::uint32_t>(pos[i] - pos[i - 1]));
  }
  if (n - (pos.back() + L) > L)
    throw CoverageError("tail after the last occurrence is longer than l(q)", pos.back() + L);
  QpEncoding enc;
  enc.alphabet_size = alphabet_size;
  enc.quasiperiod = q;
  enc.head = text.prefix(pos.front());
  enc.tail = text.suffix(n - (pos.back() + L));
  enc.tokens = compact_jumps(jumps, L);
  enc.length = n;
  return enc;
}

/// u . (q overlaid at cumulative jump offsets) . v; overlapping placements
/// must agree letter by letter.
inline Word decode(const QpEncoding &enc) {
  const Word &q = enc.quasiperiod;
  const std::size_t L = q.size();
  if (L == 0)
    throw IntegrityError("encoding has an empty quasiperiod");
  if (enc.head.size() + enc.tail.size() + L > enc.length)
    throw IntegrityError("head, tail and quasiperiod exceed the declared length");
  for (const Word *w : {&q, &enc.head, &enc.tail})
    for (Letter l : *w)
      if (l >= enc.alphabet_size)
        throw IntegrityError("letter outside the declared alphabet");
  const std::size_t interior_end = enc.length - enc.tail.size();
  std::vector<Letter> out(enc.head.begin(), enc.head.end());
  out.reserve(enc.length);
  auto place = [&](std::size_t at) {
    if (at + L > interior_end)
      throw IntegrityError("occurrence runs past the interior");
    if (at > out.size())
      throw IntegrityError("gap between occurrences");
    for (std::size_t i = 0; i < L; ++i) {
      if (at + i < out.size()) {
        if (out[at + i] != q[i])
          throw IntegrityError("overlapping occurrences disagree at position " + std::to_string(at + i));
      } else {
        out.push_back(q[i]);
      }
    }
  };
  std::size_t at = enc.head.size();
  place(at);
  for (std::uint32_t t : enc.tokens) {
    if (t == 0 || t > L)
      throw IntegrityError("jump token outside [1, l(q)]");
    at += t;
    place(at);
  }
  if (out.size() != interior_end)
    throw IntegrityError("interior ends before the tail");
  out.insert(out.end(), enc.tail.begin(), enc.tail.end());
  return Word(std::move(out));
}

struct BitCost {
  /// Fixed header cost: magic plus the five header fields.
  static constexpr std::size_t header_bits = 32 + 32 + 32 + 64 + 32 + 32;

  std::size_t bits = 0;
  std::size_t token_bits = 0; // per token
  double rate = 0;            // bits / n
  double bound = 0;           // 4 log2(l(q)) / l(q) + (C0 + 3 l(q) bits-per-letter) / n
  bool within_bound = false;
};

inline BitCost bit_cost(const QpEncoding &enc) {
  const std::size_t L = enc.quasiperiod.size();
  const unsigned bpl = Alphabet(std::max<std::size_t>(enc.alphabet_size, 1)).bits_per_letter();
  BitCost c;
  c.token_bits = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(L + 1))));
  c.bits = BitCost::header_bits + (L + enc.head.size() + enc.tail.size()) * bpl + enc.tokens.size() * c.token_bits;
  const double n = static_cast<double>(enc.length);
  c.rate = static_cast<double>(c.bits) / n;
  c.bound = 4.0 * std::log2(static_cast<double>(L)) / static_cast<double>(L) +
            static_cast<double>(BitCost::header_bits + 3 * L * bpl) / n;
  c.within_bound = c.rate <= c.bound;
  return c;
}

namespace detail {

inline void put_u32(std::ostream &os, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i)
    b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b.data(), 4);
}

inline void put_u64(std::ostream &os, std::uint64_t v) {
  put_u32(os, static_cast<std::uint32_t>(v & 0xffffffffu));
  put_u32(os, static_cast<std::uint32_t>(v >> 32));
}

inline std::uint32_t get_u32(const std::vector<unsigned char> &buf, std::size_t &at) {
  if (at + 4 > buf.size())
    throw IntegrityError("truncated container");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(buf[at + static_cast<std::size_t>(i)]) << (8 * i);
  at += 4;
  return v;
}

inline std::uint64_t get_u64(const std::vector<unsigned char> &buf, std::size_t &at) {
  std::uint64_t lo = get_u32(buf, at);
  std::uint64_t hi = get_u32(buf, at);
  return lo | (hi << 32);
}

inline Word get_letters(const std::vector<unsigned char> &buf, std::size_t &at, std::size_t count) {
  if (count > (buf.size() - at) / 4)
    throw IntegrityError("truncated container");
  Word w;
  w.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    w.push_back(get_u32(buf, at));
  return w;
}

} // namespace detail

inline void write_container(std::ostream &os, const QpEncoding &enc) {
  os.write("QPZ1", 4);
  detail::put_u32(os, static_cast<std::uint32_t>(enc.alphabet_size));
  detail::put_u32(os, static_cast<std::uint32_t>(enc.quasiperiod.size()));
  detail::put_u64(os, enc.length);
  detail::put_u32(os, static_cast<std::uint32_t>(enc.head.size()));
  detail::put_u32(os, static_cast<std::uint32_t>(enc.tail.size()));
  for (const Word *w : {&enc.quasiperiod, &enc.head, &enc.tail})
    for (Letter l : *w)
      detail::put_u32(os, l);
  for (std::uint32_t t : enc.tokens)
    detail::put_u32(os, t);
}

inline QpEncoding read_container(std::istream &is) {
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (buf.size() < 4 || std::string(buf.begin(), buf.begin() + 4) != "QPZ1")
    throw IntegrityError("missing QPZ1 magic");
  std::size_t at = 4;
  QpEncoding enc;
  enc.alphabet_size = detail::get_u32(buf, at);
  std::size_t qlen = detail::get_u32(buf, at);
  enc.length = detail::get_u64(buf, at);
  std::size_t ulen = detail::get_u32(buf, at);
  std::size_t vlen = detail::get_u32(buf, at);
  enc.quasiperiod = detail::get_letters(buf, at, qlen);
  enc.head = detail::get_letters(buf, at, ulen);
  enc.tail = detail::get_letters(buf, at, vlen);
  if ((buf.size() - at) % 4 != 0)
    throw IntegrityError("token array is not a whole number of u32 fields");
  while (at < buf.size())
    enc.tokens.push_back(detail::get_u32(buf, at));
  return enc;
}

} // namespace qw
