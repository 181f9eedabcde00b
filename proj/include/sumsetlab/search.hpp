#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumsetlab/element_set.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/subgroup.hpp"

namespace sumsetlab::search {

// One witness line of a search. ratio fields hold the exact fraction
// sigma_size / card^2.
struct SearchRow {
  std::string group;
  std::vector<std::uint64_t> witness;
  std::uint64_t card = 0;
  std::uint64_t sigma_size = 0;
  std::uint64_t stab_order = 1;
  std::uint64_t ratio_num = 0;
  std::uint64_t ratio_den = 0;
  std::string bound;
  bool satisfied = true;

  bool operator==(const SearchRow&) const = default;
};

struct SearchReport {
  std::string mode;
  std::string group;
  std::uint64_t universe = 0;  // number of candidate sets enumerated
  bool sampled = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  double wall_ms = 0.0;
  std::vector<SearchRow> rows;          // per-cardinality minima
  std::optional<SearchRow> best;        // overall extremum

  bool operator==(const SearchReport&) const = default;
};

/**
 * Scans subsets A of G \ {0} (optionally with A n (-A) empty), filters to
 * trivial stab(sigma(A)), and reports the minimum |sigma(A)| / |A|^2 per
 * cardinality plus the overall minimum. Witnesses are the first attaining
 * set in (cardinality, bitmask) order. Exhaustive up to 2^24 candidate
 * sets; beyond that a seeded sample budget is required.
 */
SearchReport min_ratio_scan(const GroupSpec& g, bool require_antisymmetric,
                            std::optional<std::uint64_t> sample_budget = {},
                            std::uint64_t seed = 0);

// Recomputes sigma, stabilizer and the ratio of every witness row; throws
// verification_error on any mismatch.
void revalidate(const SearchReport& report);

// Exact g(t) = max |sigma(B)| over t-subsets B of a. Refuses when the
// number of combinations exceeds 10^7.
std::uint64_t exact_g_oracle(const GroupSpec& g, const ElementSet& a,
                             std::uint64_t t);

struct NoncoverResult {
  std::uint64_t n = 0;
  std::uint64_t phi = 0;        // number of units
  std::uint64_t max_card = 0;   // largest |A|, A subset of Z_n^*, sigma(A) != Z_n
  ElementSet witness;
  bool within_8sqrt = false;    // max_card <= 8 sqrt(n)
};

// Exhaustive over all subsets of the units of Z_n; refuses when phi(n) > 24.
NoncoverResult max_coprime_noncovering(std::uint64_t n);

enum class ConstructionKind { interval, unit_interval_psq };

struct NamedCheck {
  std::string name;
  bool pass = false;
};

struct ConstructionResult {
  GroupSpec group;
  ElementSet set;
  std::uint64_t sigma_size = 0;
  std::vector<NamedCheck> checks;
  bool all_pass = false;
};

/**
 * The two extremal families:
 *  - interval n: A = {±1..±n} in Z_N, N the smallest prime > 2n(n+1);
 *    checks |sigma(A)| = n(n+1)+1 and trivial stabilizer.
 *  - unit_interval_psq p (odd prime): A = {±1..±(p-1)} in Z_{p^2};
 *    checks all elements are units, |A| = 2p-2, sigma(A) misses
 *    p(p-1)/2 + 1.
 */
ConstructionResult construction_family(ConstructionKind kind,
                                       std::uint64_t param);

// First A (by cardinality, then bitmask) with {0} strictly inside
// stab(sigma(A)) strictly inside G; exhaustive, |G| <= 16.
std::optional<std::pair<ElementSet, Subgroup>> find_nontrivial_stab_witness(
    const GroupSpec& g);

// Small number-theory helpers shared with the CLI.
bool is_prime(std::uint64_t n);
std::uint64_t next_prime_above(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

}  // namespace sumsetlab::search
