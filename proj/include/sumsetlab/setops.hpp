#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sumsetlab/element_set.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/subgroup.hpp"

namespace sumsetlab {

// --- translation ----------------------------------------------------------

// S + c = { s + c : s in S }. Implemented as a composition of per-factor
// block rotations of the bit array, so |shift(s, c)| == |s| always.
ElementSet shift(const GroupSpec& g, const ElementSet& s, const Element& c);
ElementSet shift(const GroupSpec& g, const ElementSet& s, std::uint64_t c_index);

// { -s : s in S }.
ElementSet negate_set(const GroupSpec& g, const ElementSet& s);

// --- spans and sumsets ----------------------------------------------------

// Subset-sum span: all sums over subsets of a, including the empty sum 0.
// Computed by the incremental fold S <- S | (S + c) starting from {0}.
ElementSet sigma(const GroupSpec& g, const ElementSet& a);

// {x + y}; an empty operand yields the empty set.
ElementSet sumset(const GroupSpec& g, const ElementSet& x, const ElementSet& y);

// r-fold sumset x + x + ... + x, r >= 1.
ElementSet iterated_sumset(const GroupSpec& g, const ElementSet& x,
                           std::uint64_t r);

// C* = C u (-C) u {0}.
ElementSet star_closure(const GroupSpec& g, const ElementSet& c);

// --- statistics -----------------------------------------------------------

// stab(S) = { g : S + g = S }. stab of the empty set is all of G.
Subgroup stabilizer(const GroupSpec& g, const ElementSet& s);

// lambda_S(c) = |(S + c) \ S|, the number of fresh elements a translate adds.
std::uint64_t lambda(const GroupSpec& g, const ElementSet& s,
                     std::uint64_t c_index);
std::uint64_t lambda(const GroupSpec& g, const ElementSet& s, const Element& c);

// rho_S(d) = |S n (S + d)|, the difference-representation count;
// rho + lambda = |S|.
std::uint64_t rho(const GroupSpec& g, const ElementSet& s,
                  std::uint64_t d_index);
std::uint64_t rho(const GroupSpec& g, const ElementSet& s, const Element& d);

// def(S) over the whole group: min(|S|, |G \ S|).
std::uint64_t deficiency(const ElementSet& s);
// def_Q(S) = min(|S n Q|, |Q \ S|) for coset ordinal `coset` of q.
std::uint64_t deficiency(const ElementSet& s, const GroupSpec& g,
                         const QuotientView& q, std::uint32_t coset);

// D_t = { d : rho(d) >= t }.
ElementSet level_set(const GroupSpec& g, const ElementSet& s, std::uint64_t t);

// Element of `candidates` with maximal lambda, ties broken by minimum
// element index. Returns (index, lambda). Throws on empty candidates.
std::pair<std::uint64_t, std::uint64_t> best_increment(
    const GroupSpec& g, const ElementSet& s, const ElementSet& candidates);

// --- coset profiles -------------------------------------------------------

struct CosetCounts {
  std::uint64_t in_count = 0;   // |S n Q|
  std::uint64_t out_count = 0;  // |Q \ S|
  bool sparse = false;          // in_count <= sparse_threshold
  bool very_sparse = false;     // in_count <= very_sparse_threshold
  bool dense = false;           // out_count <= sparse_threshold
};

// Per-coset intersection counts and sparse/dense classification. A coset can
// be both sparse and dense when |H| <= 2 * sparse_threshold; both flags are
// reported. "neither" is the absence of both.
struct CosetProfile {
  std::uint64_t subgroup_order = 0;
  std::uint64_t sparse_threshold = 0;
  std::uint64_t very_sparse_threshold = 0;
  std::vector<CosetCounts> per_coset;
};

CosetProfile coset_profile(const ElementSet& s, const GroupSpec& g,
                           const QuotientView& q, std::uint64_t sparse_threshold,
                           std::uint64_t very_sparse_threshold);

}  // namespace sumsetlab
