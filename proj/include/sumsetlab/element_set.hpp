#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sumsetlab/bitkernel.hpp"

namespace sumsetlab {

/**
 * Dense bit-indexed subset of a universe [0, universe). This is the
 * representation of every set the toolkit manipulates: ground sets, spans,
 * cosets, sumsets. The cached cardinality equals the popcount at all times;
 * bits at or above the universe are always zero.
 */
class ElementSet {
 public:
  ElementSet() = default;

  explicit ElementSet(std::uint64_t universe)
      : universe_(universe), words_(bits::words_for(universe), 0) {}

  static ElementSet full(std::uint64_t universe) {
    ElementSet s(universe);
    for (std::uint64_t i = 0; i < universe / 64; ++i) s.words_[i] = ~0ull;
    if (universe % 64)
      s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
    s.card_ = universe;
    return s;
  }

  static ElementSet of(std::uint64_t universe,
                       std::initializer_list<std::uint64_t> indices) {
    ElementSet s(universe);
    for (std::uint64_t i : indices) s.insert(i);
    return s;
  }

  std::uint64_t universe() const { return universe_; }
  std::uint64_t count() const { return card_; }
  bool empty() const { return card_ == 0; }

  bool contains(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void insert(std::uint64_t i) {
    check_index(i);
    std::uint64_t& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    card_ += !(w & bit);
    w |= bit;
  }

  void erase(std::uint64_t i) {
    check_index(i);
    std::uint64_t& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    card_ -= !!(w & bit);
    w &= ~bit;
  }

  void clear() {
    words_.assign(words_.size(), 0);
    card_ = 0;
  }

  // Smallest set index; the set must be nonempty.
  std::uint64_t front() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
    throw std::logic_error("front() of empty set");
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        fn(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::uint64_t> indices() const {
    std::vector<std::uint64_t> out;
    out.reserve(card_);
    for_each([&](std::uint64_t i) { out.push_back(i); });
    return out;
  }

  ElementSet& operator|=(const ElementSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    recount();
    return *this;
  }

  ElementSet& operator&=(const ElementSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    recount();
    return *this;
  }

  // Set difference.
  ElementSet& operator-=(const ElementSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    recount();
    return *this;
  }

  friend ElementSet operator|(ElementSet a, const ElementSet& b) {
    return a |= b;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) {
    return a &= b;
  }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) {
    return a -= b;
  }

  ElementSet complement() const {
    ElementSet out = full(universe_);
    return out -= *this;
  }

  bool is_subset_of(const ElementSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const ElementSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  std::uint64_t intersection_count(const ElementSet& o) const {
    check_same(o);
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      n += std::popcount(words_[i] & o.words_[i]);
    return n;
  }

  bool operator==(const ElementSet& o) const {
    return universe_ == o.universe_ && words_ == o.words_;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  // Recompute the cached cardinality after direct word manipulation.
  void recount() {
    card_ = 0;
    for (std::uint64_t w : words_) card_ += std::popcount(w);
  }

  // Hex bitmap: one byte per 8 element indices, little-endian bit order
  // within the byte, two lowercase hex digits per byte.
  std::string to_hex() const;
  static ElementSet from_hex(std::uint64_t universe, std::string_view hex);

 private:
  void check_index(std::uint64_t i) const {
    if (i >= universe_) throw std::out_of_range("element index out of range");
  }
  void check_same(const ElementSet& o) const {
    if (universe_ != o.universe_)
      throw std::invalid_argument("sets over different universes");
  }

  std::uint64_t universe_ = 0;
  std::vector<std::uint64_t> words_;
  std::uint64_t card_ = 0;
};

}  // namespace sumsetlab
