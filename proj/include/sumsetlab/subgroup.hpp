#pragma once

#include <cstdint>
#include <vector>

#include "sumsetlab/element_set.hpp"
#include "sumsetlab/group.hpp"

namespace sumsetlab {

/**
 * A subgroup of a GroupSpec, held as its full carrier set. Constructed by
 * the closure/stabilizer routines, which guarantee the carrier contains 0
 * and is closed under addition and negation; is_subgroup() re-checks.
 */
struct Subgroup {
  ElementSet carrier;

  std::uint64_t order() const { return carrier.count(); }
  bool is_trivial() const { return carrier.count() == 1; }

  bool operator==(const Subgroup& other) const {
    return carrier == other.carrier;
  }
};

bool is_subgroup(const GroupSpec& g, const ElementSet& carrier);

// Smallest subgroup containing gens, by closure iteration over
// gens, -gens and 0. The empty generating set yields {0}.
Subgroup generated_subgroup(const GroupSpec& g, const ElementSet& gens);
Subgroup generated_subgroup(const GroupSpec& g,
                            const std::vector<std::uint64_t>& gen_indices);

Subgroup trivial_subgroup(const GroupSpec& g);
Subgroup full_subgroup(const GroupSpec& g);

/**
 * The coset partition G/H. Cosets are numbered in order of their minimum
 * element index, so the trivial coset H is always ordinal 0 and each
 * coset_reps entry is the least index in its coset.
 */
struct QuotientView {
  Subgroup subgroup;
  std::uint64_t parent_order = 0;
  std::vector<std::uint64_t> coset_reps;
  std::vector<std::uint32_t> coset_index;  // element index -> coset ordinal

  std::uint64_t coset_count() const { return coset_reps.size(); }
  std::uint32_t coset_of(std::uint64_t element_index) const {
    return coset_index[element_index];
  }
};

// Throws std::invalid_argument("not a subgroup") if the carrier fails the
// closure check.
QuotientView quotient(const GroupSpec& g, const Subgroup& h);

// Members of one coset as a set.
ElementSet coset_members(const GroupSpec& g, const QuotientView& q,
                         std::uint32_t coset);

// Ordinal arithmetic in G/H via canonical representatives.
std::uint32_t coset_add(const GroupSpec& g, const QuotientView& q,
                        std::uint32_t a, std::uint32_t b);

// All subgroups of g, found by closing the two-generator subgroups under
// join. Refused for |G| > 4096; only desk-scale searches need it.
std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g);

}  // namespace sumsetlab
