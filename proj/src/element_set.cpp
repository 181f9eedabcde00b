#include "sumsetlab/element_set.hpp"

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

std::string ElementSet::to_hex() const {
  static const char* digits = "0123456789abcdef";
  const std::uint64_t nbytes = (universe_ + 7) / 8;
  std::string out;
  out.reserve(nbytes * 2);
  for (std::uint64_t b = 0; b < nbytes; ++b) {
    const unsigned byte =
        static_cast<unsigned>((words_[b / 8] >> ((b % 8) * 8)) & 0xff);
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

ElementSet ElementSet::from_hex(std::uint64_t universe, std::string_view hex) {
  const std::uint64_t nbytes = (universe + 7) / 8;
  if (hex.size() != nbytes * 2)
    throw parse_error("bad hex bitmap: expected " + std::to_string(nbytes * 2) +
                      " digits, got " + std::to_string(hex.size()));
  ElementSet s(universe);
  for (std::uint64_t b = 0; b < nbytes; ++b) {
    unsigned byte = 0;
    for (int k = 0; k < 2; ++k) {
      const char c = hex[b * 2 + k];
      unsigned v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw parse_error("bad hex bitmap: invalid digit");
      byte = (byte << 4) | v;
    }
    s.words_[b / 8] |= std::uint64_t{byte} << ((b % 8) * 8);
  }
  if (universe % 8) {
    // Tail bits beyond the universe must be zero. universe % 8 != 0 implies
    // universe % 64 != 0, so the shift is in range.
    if (s.words_.back() >> (universe % 64))
      throw parse_error("bad hex bitmap: bits set past the universe");
  }
  s.recount();
  return s;
}

}  // namespace sumsetlab
