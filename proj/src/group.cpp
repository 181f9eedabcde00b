#include "sumsetlab/group.hpp"

#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

GroupSpec make_group(std::vector<std::uint32_t> factors,
                     std::uint64_t order_cap) {
  GroupSpec g;
  g.factors = std::move(factors);
  g.strides.reserve(g.factors.size());
  unsigned __int128 order = 1;
  for (std::uint32_t n : g.factors) {
    if (n < 1) throw std::invalid_argument("group factor must be >= 1");
    g.strides.push_back(static_cast<std::uint64_t>(order));
    order *= n;
    if (order > order_cap) throw std::invalid_argument("group too large");
  }
  g.order = static_cast<std::uint64_t>(order);
  return g;
}

GroupSpec parse_group(std::string_view text, std::uint64_t order_cap) {
  std::vector<std::uint32_t> factors;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::tolower(static_cast<unsigned char>(text[pos])) != 'z')
      throw parse_error("bad group spec '" + std::string(text) +
                        "': expected 'Z<n>' factor");
    ++pos;
    std::uint32_t value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == text.data() + pos)
      throw parse_error("bad group spec '" + std::string(text) +
                        "': expected a factor size");
    pos = static_cast<std::size_t>(ptr - text.data());
    factors.push_back(value);
    if (pos < text.size()) {
      if (std::tolower(static_cast<unsigned char>(text[pos])) != 'x')
        throw parse_error("bad group spec '" + std::string(text) +
                          "': expected 'x' separator");
      ++pos;
    }
  }
  if (factors.empty())
    throw parse_error("bad group spec: empty");
  try {
    return make_group(std::move(factors), order_cap);
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string("bad group spec '") + std::string(text) +
                      "': " + e.what());
  }
}

std::string format_group(const GroupSpec& g) {
  if (g.factors.empty()) return "Z1";
  std::ostringstream out;
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    if (i) out << 'x';
    out << 'Z' << g.factors[i];
  }
  return out.str();
}

namespace {

std::uint64_t index_of(const GroupSpec& g,
                       const std::vector<std::uint32_t>& coords) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    idx += coords[i] * g.strides[i];
  return idx;
}

}  // namespace

Element element_zero(const GroupSpec& g) {
  Element e;
  e.coords.assign(g.factors.size(), 0);
  return e;
}

Element element_from_index(const GroupSpec& g, std::uint64_t index) {
  if (index >= g.order) throw std::invalid_argument("invalid element");
  Element e;
  e.index = index;
  e.coords.resize(g.factors.size());
  for (std::size_t i = 0; i < g.factors.size(); ++i)
    e.coords[i] = static_cast<std::uint32_t>((index / g.strides[i]) %
                                             g.factors[i]);
  return e;
}

Element element_from_coords(const GroupSpec& g,
                            const std::vector<std::int64_t>& coords) {
  if (coords.size() != g.factors.size())
    throw std::invalid_argument("invalid element");
  Element e;
  e.coords.resize(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const std::int64_t n = g.factors[i];
    std::int64_t r = coords[i] % n;
    if (r < 0) r += n;
    e.coords[i] = static_cast<std::uint32_t>(r);
  }
  e.index = index_of(g, e.coords);
  return e;
}

Element parse_element(const GroupSpec& g, std::string_view literal) {
  std::vector<std::int64_t> coords;
  std::size_t pos = 0;
  while (true) {
    while (pos < literal.size() && literal[pos] == ' ') ++pos;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(literal.data() + pos,
                                     literal.data() + literal.size(), value);
    if (ec != std::errc{} || ptr == literal.data() + pos)
      throw parse_error("bad element literal '" + std::string(literal) + "'");
    pos = static_cast<std::size_t>(ptr - literal.data());
    coords.push_back(value);
    while (pos < literal.size() && literal[pos] == ' ') ++pos;
    if (pos == literal.size()) break;
    if (literal[pos] != ',')
      throw parse_error("bad element literal '" + std::string(literal) + "'");
    ++pos;
  }
  try {
    return element_from_coords(g, coords);
  } catch (const std::invalid_argument&) {
    throw parse_error("bad element literal '" + std::string(literal) +
                      "': expected " + std::to_string(g.factors.size()) +
                      " coordinate(s)");
  }
}

std::string format_element(const Element& e) {
  std::ostringstream out;
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) out << ',';
    out << e.coords[i];
  }
  return out.str();
}

void validate_element(const GroupSpec& g, const Element& e) {
  if (e.coords.size() != g.factors.size())
    throw std::invalid_argument("invalid element");
  for (std::size_t i = 0; i < e.coords.size(); ++i)
    if (e.coords[i] >= g.factors[i])
      throw std::invalid_argument("invalid element");
  if (e.index != index_of(g, e.coords))
    throw std::invalid_argument("invalid element");
}

Element add(const GroupSpec& g, const Element& x, const Element& y) {
  validate_element(g, x);
  validate_element(g, y);
  Element e;
  e.coords.resize(g.factors.size());
  for (std::size_t i = 0; i < g.factors.size(); ++i)
    e.coords[i] = (x.coords[i] + y.coords[i]) % g.factors[i];
  e.index = index_of(g, e.coords);
  return e;
}

Element neg(const GroupSpec& g, const Element& x) {
  validate_element(g, x);
  Element e;
  e.coords.resize(g.factors.size());
  for (std::size_t i = 0; i < g.factors.size(); ++i)
    e.coords[i] = x.coords[i] == 0 ? 0 : g.factors[i] - x.coords[i];
  e.index = index_of(g, e.coords);
  return e;
}

Element smul(const GroupSpec& g, std::int64_t k, const Element& x) {
  validate_element(g, x);
  Element e;
  e.coords.resize(g.factors.size());
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    const std::int64_t n = g.factors[i];
    std::int64_t km = k % n;
    if (km < 0) km += n;
    e.coords[i] = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(km) * x.coords[i]) % n);
  }
  e.index = index_of(g, e.coords);
  return e;
}

std::uint64_t add_index(const GroupSpec& g, std::uint64_t x, std::uint64_t y) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    const std::uint64_t n = g.factors[i];
    const std::uint64_t dx = (x / g.strides[i]) % n;
    const std::uint64_t dy = (y / g.strides[i]) % n;
    out += ((dx + dy) % n) * g.strides[i];
  }
  return out;
}

std::uint64_t neg_index(const GroupSpec& g, std::uint64_t x) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    const std::uint64_t n = g.factors[i];
    const std::uint64_t dx = (x / g.strides[i]) % n;
    out += (dx == 0 ? 0 : n - dx) * g.strides[i];
  }
  return out;
}

std::uint64_t element_order(const GroupSpec& g, const Element& x) {
  validate_element(g, x);
  // lcm over factors of n_i / gcd(n_i, c_i); every value divides |G|.
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    const std::uint64_t n = g.factors[i];
    const std::uint64_t o = n / std::gcd<std::uint64_t>(n, x.coords[i]);
    order = std::lcm(order, o);
  }
  return order;
}

}  // namespace sumsetlab
