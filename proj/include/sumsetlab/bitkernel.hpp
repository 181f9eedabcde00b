#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>

// Word-level primitives for the dense bitset representation. Every range is
// expressed in bit positions; all reads past the word array are zero.

namespace sumsetlab::bits {

constexpr std::size_t words_for(std::uint64_t nbits) {
  return static_cast<std::size_t>((nbits + 63) / 64);
}

// Read `count` (1..64) bits starting at bit `pos`.
inline std::uint64_t read_bits(const std::uint64_t* w, std::size_t nwords,
                               std::uint64_t pos, unsigned count) {
  const std::size_t iw = static_cast<std::size_t>(pos >> 6);
  const unsigned ib = static_cast<unsigned>(pos & 63);
  std::uint64_t v = (iw < nwords) ? (w[iw] >> ib) : 0;
  if (ib != 0 && iw + 1 < nwords) v |= w[iw + 1] << (64 - ib);
  if (count < 64) v &= (std::uint64_t{1} << count) - 1;
  return v;
}

// OR `len` bits of src starting at src_pos into dst starting at dst_pos.
inline void or_copy_bits(std::uint64_t* dst, std::uint64_t dst_pos,
                         const std::uint64_t* src, std::size_t src_nwords,
                         std::uint64_t src_pos, std::uint64_t len) {
  while (len > 0) {
    const std::size_t dw = static_cast<std::size_t>(dst_pos >> 6);
    const unsigned db = static_cast<unsigned>(dst_pos & 63);
    const unsigned take =
        static_cast<unsigned>(std::min<std::uint64_t>(64 - db, len));
    dst[dw] |= read_bits(src, src_nwords, src_pos, take) << db;
    dst_pos += take;
    src_pos += take;
    len -= take;
  }
}

// OR the left-rotation by `amount` of window [win_pos, win_pos + win_len) of
// src into the same window of dst: source bit i lands on (i + amount) mod len.
inline void or_rotate_window(std::uint64_t* dst, const std::uint64_t* src,
                             std::size_t src_nwords, std::uint64_t win_pos,
                             std::uint64_t win_len, std::uint64_t amount) {
  amount %= win_len;
  if (amount == 0) {
    or_copy_bits(dst, win_pos, src, src_nwords, win_pos, win_len);
    return;
  }
  or_copy_bits(dst, win_pos + amount, src, src_nwords, win_pos,
               win_len - amount);
  or_copy_bits(dst, win_pos, src, src_nwords, win_pos + (win_len - amount),
               amount);
}

}  // namespace sumsetlab::bits
