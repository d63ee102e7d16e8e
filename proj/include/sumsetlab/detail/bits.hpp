#pragma once

// Word-level kernels shared by IntSet and CyclicSet. Bit i of a word array
// lives in word i / 64 at position i % 64.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

#include <boost/container/small_vector.hpp>

namespace sumsetlab::detail {

inline constexpr std::size_t kWordBits = 64;

using Word = std::uint64_t;
// Two inline words cover every set the exhaustive scans touch without a heap
// allocation.
using Words = boost::container::small_vector<Word, 2>;

inline std::span<Word> view(Words& w) noexcept { return {w.data(), w.size()}; }
inline std::span<const Word> view(const Words& w) noexcept { return {w.data(), w.size()}; }

constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

constexpr Word low_mask(std::size_t bits) noexcept {
  return bits >= kWordBits ? ~Word{0} : ((Word{1} << bits) - 1);
}

inline bool test_bit(std::span<const Word> w, std::size_t i) noexcept {
  return (w[i / kWordBits] >> (i % kWordBits)) & 1U;
}

inline void set_bit(std::span<Word> w, std::size_t i) noexcept {
  w[i / kWordBits] |= Word{1} << (i % kWordBits);
}

inline void clear_bit(std::span<Word> w, std::size_t i) noexcept {
  w[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

inline std::size_t popcount(std::span<const Word> w) noexcept {
  std::size_t n = 0;
  for (Word x : w) n += static_cast<std::size_t>(std::popcount(x));
  return n;
}

inline bool none(std::span<const Word> w) noexcept {
  return std::all_of(w.begin(), w.end(), [](Word x) { return x == 0; });
}

// Calls f(i) for every set bit i in ascending order.
template <typename F>
void for_each_bit(std::span<const Word> w, F&& f) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    Word x = w[k];
    while (x != 0) {
      const auto b = static_cast<std::size_t>(std::countr_zero(x));
      f(k * kWordBits + b);
      x &= x - 1;
    }
  }
}

// Index of the lowest set bit, or npos-like `w.size() * 64` when empty.
inline std::size_t first_bit(std::span<const Word> w) noexcept {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(w[k]));
  return w.size() * kWordBits;
}

inline std::size_t last_bit(std::span<const Word> w) noexcept {
  for (std::size_t k = w.size(); k-- > 0;)
    if (w[k] != 0) return k * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(w[k])));
  return w.size() * kWordBits;
}

// dst |= src << shift, truncated to dst's length.
inline void or_shift_left(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  const std::size_t ws = shift / kWordBits;
  const std::size_t bs = shift % kWordBits;
  if (ws >= dst.size()) return;
  const std::size_t limit = std::min(src.size(), dst.size() - ws);
  if (bs == 0) {
    for (std::size_t k = 0; k < limit; ++k) dst[k + ws] |= src[k];
    return;
  }
  for (std::size_t k = 0; k < limit; ++k) {
    dst[k + ws] |= src[k] << bs;
    if (k + ws + 1 < dst.size()) dst[k + ws + 1] |= src[k] >> (kWordBits - bs);
  }
}

// dst |= src >> shift.
inline void or_shift_right(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  const std::size_t ws = shift / kWordBits;
  const std::size_t bs = shift % kWordBits;
  if (ws >= src.size()) return;
  for (std::size_t k = ws; k < src.size(); ++k) {
    const std::size_t d = k - ws;
    if (d >= dst.size()) break;
    if (bs == 0) {
      dst[d] |= src[k];
    } else {
      dst[d] |= src[k] >> bs;
      if (d > 0) dst[d - 1] |= src[k] << (kWordBits - bs);
    }
  }
}

// dst |= rotate_left(src, shift) within a ring of `bits` bits. Bits of src at
// positions >= bits must be zero; the caller masks dst afterwards.
inline void or_rotate(std::span<Word> dst, std::span<const Word> src, std::size_t shift,
                      std::size_t bits) noexcept {
  if (bits <= kWordBits) {
    const Word x = src[0];
    Word r = x;
    if (shift != 0) r = (x << shift) | (x >> (bits - shift));
    dst[0] |= r & low_mask(bits);
    return;
  }
  or_shift_left(dst, src, shift);
  if (shift != 0) or_shift_right(dst, src, bits - shift);
  dst[dst.size() - 1] &= low_mask(bits - (dst.size() - 1) * kWordBits);
}

}  // namespace sumsetlab::detail
