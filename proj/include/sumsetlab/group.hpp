#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sumsetlab {

// Groups larger than this bitset cap are refused by default (the dense
// representation stays at or below 2 MiB). Overridable per call and via the
// CLI / SUMSETLAB_MAX_ORDER.
inline constexpr std::uint64_t kDefaultOrderCap = std::uint64_t{1} << 24;

/**
 * A finite abelian group Z_{n1} x ... x Z_{nk} given by its cyclic factors.
 * Elements are addressed by a mixed-radix index in [0, order): coordinate i
 * contributes coords[i] * strides[i], strides[i] = n_1 * ... * n_{i-1}.
 *
 * The factor list is kept exactly as supplied (no normal-form reduction);
 * an empty list is the trivial group of order 1.
 */
struct GroupSpec {
  std::vector<std::uint32_t> factors;
  std::vector<std::uint64_t> strides;
  std::uint64_t order = 1;

  bool operator==(const GroupSpec& other) const {
    return factors == other.factors;
  }
};

GroupSpec make_group(std::vector<std::uint32_t> factors,
                     std::uint64_t order_cap = kDefaultOrderCap);

// "Z12", "Z2xZ4" (case-insensitive, 'x' separator).
GroupSpec parse_group(std::string_view text,
                      std::uint64_t order_cap = kDefaultOrderCap);
std::string format_group(const GroupSpec& g);

/**
 * A group element as residue coordinates plus its dense index. The two views
 * stay consistent: index = sum coords[i] * strides[i].
 */
struct Element {
  std::vector<std::uint32_t> coords;
  std::uint64_t index = 0;

  bool operator==(const Element& other) const { return index == other.index; }
};

Element element_zero(const GroupSpec& g);
Element element_from_index(const GroupSpec& g, std::uint64_t index);
// Accepts arbitrary signed coordinates and reduces them mod the factors.
Element element_from_coords(const GroupSpec& g,
                            const std::vector<std::int64_t>& coords);
// Comma-separated coordinate literal, e.g. "1,3" in Z2xZ4 or "-2" in Z9.
Element parse_element(const GroupSpec& g, std::string_view literal);
std::string format_element(const Element& e);

void validate_element(const GroupSpec& g, const Element& e);

Element add(const GroupSpec& g, const Element& x, const Element& y);
Element neg(const GroupSpec& g, const Element& x);
Element smul(const GroupSpec& g, std::int64_t k, const Element& x);

// Index-space arithmetic (decodes digits on the fly).
std::uint64_t add_index(const GroupSpec& g, std::uint64_t x, std::uint64_t y);
std::uint64_t neg_index(const GroupSpec& g, std::uint64_t x);

// Least m >= 1 with m*x = 0.
std::uint64_t element_order(const GroupSpec& g, const Element& x);

}  // namespace sumsetlab
