#include "sumsetlab/setops.hpp"

#include <stdexcept>

#include "sumsetlab/bitkernel.hpp"

namespace sumsetlab {

namespace {

void check_set(const GroupSpec& g, const ElementSet& s) {
  if (s.universe() != g.order)
    throw std::invalid_argument("set does not belong to this group");
}

// Applies the translation-by-c permutation of index space. In mixed radix,
// adding c splits into independent rotations: for factor i the index window
// [p, p + n_i*stride_i) rotates by c_i*stride_i.
void shift_words(const GroupSpec& g, const std::vector<std::uint32_t>& coords,
                 std::vector<std::uint64_t>& buf_a,
                 std::vector<std::uint64_t>& buf_b) {
  const std::size_t nwords = buf_a.size();
  for (std::size_t f = 0; f < g.factors.size(); ++f) {
    const std::uint64_t n = g.factors[f];
    const std::uint64_t c = coords[f] % n;
    if (c == 0) continue;
    const std::uint64_t stride = g.strides[f];
    const std::uint64_t window = n * stride;
    buf_b.assign(nwords, 0);
    for (std::uint64_t pos = 0; pos < g.order; pos += window)
      bits::or_rotate_window(buf_b.data(), buf_a.data(), nwords, pos, window,
                             c * stride);
    buf_a.swap(buf_b);
  }
}

}  // namespace

ElementSet shift(const GroupSpec& g, const ElementSet& s, const Element& c) {
  check_set(g, s);
  validate_element(g, c);
  if (c.index == 0 || g.order <= 1) return s;
  std::vector<std::uint64_t> cur(s.words().begin(), s.words().end());
  std::vector<std::uint64_t> scratch;
  shift_words(g, c.coords, cur, scratch);
  ElementSet out(g.order);
  std::copy(cur.begin(), cur.end(), out.mutable_words().begin());
  out.recount();
  return out;
}

ElementSet shift(const GroupSpec& g, const ElementSet& s,
                 std::uint64_t c_index) {
  return shift(g, s, element_from_index(g, c_index));
}

ElementSet negate_set(const GroupSpec& g, const ElementSet& s) {
  check_set(g, s);
  ElementSet out(g.order);
  s.for_each([&](std::uint64_t i) { out.insert(neg_index(g, i)); });
  return out;
}

ElementSet sigma(const GroupSpec& g, const ElementSet& a) {
  check_set(g, a);
  ElementSet span(g.order);
  span.insert(0);
  a.for_each([&](std::uint64_t c) { span |= shift(g, span, c); });
  return span;
}

ElementSet sumset(const GroupSpec& g, const ElementSet& x,
                  const ElementSet& y) {
  check_set(g, x);
  check_set(g, y);
  ElementSet out(g.order);
  if (x.empty() || y.empty()) return out;
  // Union of translates of the larger operand over the smaller one.
  const ElementSet& base = x.count() >= y.count() ? x : y;
  const ElementSet& offsets = x.count() >= y.count() ? y : x;
  offsets.for_each([&](std::uint64_t c) { out |= shift(g, base, c); });
  return out;
}

ElementSet iterated_sumset(const GroupSpec& g, const ElementSet& x,
                           std::uint64_t r) {
  check_set(g, x);
  if (r < 1) throw std::invalid_argument("iterated_sumset requires r >= 1");
  ElementSet out = x;
  for (std::uint64_t i = 1; i < r; ++i) {
    out = sumset(g, out, x);
    if (out.empty()) break;  // empty absorbs
  }
  return out;
}

ElementSet star_closure(const GroupSpec& g, const ElementSet& c) {
  check_set(g, c);
  ElementSet out = c | negate_set(g, c);
  out.insert(0);
  return out;
}

Subgroup stabilizer(const GroupSpec& g, const ElementSet& s) {
  check_set(g, s);
  ElementSet carrier(g.order);
  if (s.empty()) return Subgroup{ElementSet::full(g.order)};
  // S + g = S forces g in S - s0 for any fixed s0 in S.
  const std::uint64_t s0 = s.front();
  const std::uint64_t neg_s0 = neg_index(g, s0);
  s.for_each([&](std::uint64_t x) {
    const std::uint64_t cand = add_index(g, x, neg_s0);
    if (shift(g, s, cand) == s) carrier.insert(cand);
  });
  return Subgroup{std::move(carrier)};
}

std::uint64_t rho(const GroupSpec& g, const ElementSet& s,
                  std::uint64_t d_index) {
  check_set(g, s);
  if (d_index == 0) return s.count();
  return s.intersection_count(shift(g, s, d_index));
}

std::uint64_t rho(const GroupSpec& g, const ElementSet& s, const Element& d) {
  validate_element(g, d);
  return rho(g, s, d.index);
}

std::uint64_t lambda(const GroupSpec& g, const ElementSet& s,
                     std::uint64_t c_index) {
  return s.count() - rho(g, s, c_index);
}

std::uint64_t lambda(const GroupSpec& g, const ElementSet& s,
                     const Element& c) {
  validate_element(g, c);
  return lambda(g, s, c.index);
}

std::uint64_t deficiency(const ElementSet& s) {
  return std::min(s.count(), s.universe() - s.count());
}

std::uint64_t deficiency(const ElementSet& s, const GroupSpec& g,
                         const QuotientView& q, std::uint32_t coset) {
  check_set(g, s);
  if (coset >= q.coset_count())
    throw std::invalid_argument("coset ordinal out of range");
  std::uint64_t in_count = 0;
  s.for_each([&](std::uint64_t i) { in_count += q.coset_index[i] == coset; });
  const std::uint64_t h = q.subgroup.order();
  return std::min(in_count, h - in_count);
}

ElementSet level_set(const GroupSpec& g, const ElementSet& s,
                     std::uint64_t t) {
  check_set(g, s);
  ElementSet out(g.order);
  if (t == 0) return ElementSet::full(g.order);
  for (std::uint64_t d = 0; d < g.order; ++d)
    if (rho(g, s, d) >= t) out.insert(d);
  return out;
}

std::pair<std::uint64_t, std::uint64_t> best_increment(
    const GroupSpec& g, const ElementSet& s, const ElementSet& candidates) {
  check_set(g, s);
  check_set(g, candidates);
  if (candidates.empty()) throw std::invalid_argument("no candidates");
  std::uint64_t best_index = 0;
  std::uint64_t best_lambda = 0;
  bool first = true;
  // Ascending index order makes the min-index tie-break automatic.
  candidates.for_each([&](std::uint64_t c) {
    const std::uint64_t l = lambda(g, s, c);
    if (first || l > best_lambda) {
      best_index = c;
      best_lambda = l;
      first = false;
    }
  });
  return {best_index, best_lambda};
}

CosetProfile coset_profile(const ElementSet& s, const GroupSpec& g,
                           const QuotientView& q,
                           std::uint64_t sparse_threshold,
                           std::uint64_t very_sparse_threshold) {
  check_set(g, s);
  CosetProfile profile;
  profile.subgroup_order = q.subgroup.order();
  profile.sparse_threshold = sparse_threshold;
  profile.very_sparse_threshold = very_sparse_threshold;
  profile.per_coset.resize(q.coset_count());
  s.for_each([&](std::uint64_t i) {
    profile.per_coset[q.coset_index[i]].in_count += 1;
  });
  for (CosetCounts& c : profile.per_coset) {
    c.out_count = profile.subgroup_order - c.in_count;
    c.sparse = c.in_count <= sparse_threshold;
    c.very_sparse = c.in_count <= very_sparse_threshold;
    c.dense = c.out_count <= sparse_threshold;
  }
  return profile;
}

}  // namespace sumsetlab
