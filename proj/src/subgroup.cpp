#include "sumsetlab/subgroup.hpp"

#include <stdexcept>

#include "sumsetlab/setops.hpp"

namespace sumsetlab {

bool is_subgroup(const GroupSpec& g, const ElementSet& carrier) {
  if (carrier.universe() != g.order) return false;
  if (!carrier.contains(0)) return false;
  // A set containing 0 with S + u = S for every u in S is closed under
  // addition, and closure under negation follows (u + (|u|-1)u = 0).
  bool ok = true;
  carrier.for_each([&](std::uint64_t u) {
    if (ok && shift(g, carrier, u) != carrier) ok = false;
  });
  return ok;
}

Subgroup generated_subgroup(const GroupSpec& g, const ElementSet& gens) {
  if (gens.universe() != g.order)
    throw std::invalid_argument("set does not belong to this group");
  ElementSet step = star_closure(g, gens);
  ElementSet carrier(g.order);
  carrier.insert(0);
  while (true) {
    const ElementSet next = sumset(g, carrier, step);
    if (next == carrier) break;
    carrier = next;
  }
  return Subgroup{std::move(carrier)};
}

Subgroup generated_subgroup(const GroupSpec& g,
                            const std::vector<std::uint64_t>& gen_indices) {
  ElementSet gens(g.order);
  for (std::uint64_t i : gen_indices) gens.insert(i);
  return generated_subgroup(g, gens);
}

Subgroup trivial_subgroup(const GroupSpec& g) {
  ElementSet carrier(g.order);
  carrier.insert(0);
  return Subgroup{std::move(carrier)};
}

Subgroup full_subgroup(const GroupSpec& g) {
  return Subgroup{ElementSet::full(g.order)};
}

QuotientView quotient(const GroupSpec& g, const Subgroup& h) {
  if (!is_subgroup(g, h.carrier))
    throw std::invalid_argument("not a subgroup");
  QuotientView q;
  q.subgroup = h;
  q.parent_order = g.order;
  q.coset_index.assign(g.order, UINT32_MAX);
  for (std::uint64_t i = 0; i < g.order; ++i) {
    if (q.coset_index[i] != UINT32_MAX) continue;
    // Scanning upward makes the representative the coset minimum and gives
    // the trivial coset ordinal 0.
    const auto ordinal = static_cast<std::uint32_t>(q.coset_reps.size());
    q.coset_reps.push_back(i);
    h.carrier.for_each([&](std::uint64_t u) {
      q.coset_index[add_index(g, i, u)] = ordinal;
    });
  }
  return q;
}

ElementSet coset_members(const GroupSpec& g, const QuotientView& q,
                         std::uint32_t coset) {
  if (coset >= q.coset_count())
    throw std::invalid_argument("coset ordinal out of range");
  return shift(g, q.subgroup.carrier, q.coset_reps[coset]);
}

std::uint32_t coset_add(const GroupSpec& g, const QuotientView& q,
                        std::uint32_t a, std::uint32_t b) {
  if (a >= q.coset_count() || b >= q.coset_count())
    throw std::invalid_argument("coset ordinal out of range");
  return q.coset_index[add_index(g, q.coset_reps[a], q.coset_reps[b])];
}

std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g) {
  if (g.order > 4096)
    throw std::invalid_argument(
        "subgroup enumeration refused for groups larger than 4096");
  std::vector<Subgroup> found;
  auto seen = [&](const Subgroup& s) {
    for (const Subgroup& f : found)
      if (f == s) return true;
    return false;
  };
  found.push_back(trivial_subgroup(g));
  for (std::uint64_t x = 0; x < g.order; ++x)
    for (std::uint64_t y = x; y < g.order; ++y) {
      Subgroup s = generated_subgroup(g, std::vector<std::uint64_t>{x, y});
      if (!seen(s)) found.push_back(std::move(s));
    }
  // Close under join; every subgroup is a join of cyclic ones.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = found.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        ElementSet join_gens = found[i].carrier | found[j].carrier;
        Subgroup s = generated_subgroup(g, join_gens);
        if (!seen(s)) {
          found.push_back(std::move(s));
          grew = true;
        }
      }
  }
  return found;
}

}  // namespace sumsetlab
