#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumsetlab/element_set.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/subgroup.hpp"

namespace sumsetlab {

// --- antisymmetric bipartition ---------------------------------------------

struct Bipartition {
  ElementSet first;
  ElementSet second;
};

/**
 * Splits A (0 not in A, no self-inverse element) into disjoint halves with
 * |first| = floor(|A|/2) and half n (-half) empty for both. Deterministic:
 * each full inverse pair contributes its smaller index to `first`; unpaired
 * elements alternate starting with `second`, in ascending index order.
 *
 * Throws "zero not allowed" / "bipartition impossible for self-inverse
 * element" on the excluded inputs.
 */
Bipartition antisymmetric_bipartition(const GroupSpec& g, const ElementSet& a);

// --- quotient multiplicity decomposition -----------------------------------

/**
 * The multiplicity sets of A relative to a subgroup H: level i holds the
 * cosets meeting A at least i times, so level 1 contains level 2 contains...
 * and the level sizes add up to |A|. Punctured levels drop the trivial
 * coset. When H equals stab(sigma(A)) the report also records whether
 * sigma(A) is exactly the union of the cosets in the quotient sumset
 * sigma(A'_1) + ... + sigma(A'_h).
 */
struct DecompositionReport {
  Subgroup subgroup;
  std::uint64_t set_size = 0;
  std::uint64_t set_size_outside_h = 0;
  // levels[i-1] = coset ordinals with |A n Q| >= i; trailing empty levels
  // up to |H| are omitted.
  std::vector<std::vector<std::uint32_t>> levels;
  std::vector<std::vector<std::uint32_t>> punctured_levels;
  std::uint64_t sigma_size = 0;
  // sigma(A'_1) + ... + sigma(A'_h) as an H-saturated subset of G, and its
  // size counted in cosets.
  ElementSet quotient_sumset;
  std::uint64_t quotient_sumset_size = 0;
  bool h_is_span_stabilizer = false;
  std::optional<bool> factorization_ok;  // set iff h_is_span_stabilizer

  std::uint64_t level_size_sum() const;
  std::uint64_t punctured_size_sum() const;
};

DecompositionReport multiplicity_decomposition(const GroupSpec& g,
                                               const ElementSet& a,
                                               const Subgroup& h);

// --- greedy growth -----------------------------------------------------------

enum class StageSchedule { three_stage, doubling };

struct GrowthStep {
  std::uint64_t element = 0;
  std::uint64_t lambda = 0;
  std::uint64_t span_after = 0;

  bool operator==(const GrowthStep&) const = default;
};

/**
 * Audit trail of one greedy chain: the chosen elements with their lambda
 * increments and resulting span sizes, replayable from scratch. Stage marks
 * use the group order as the modulus n; -1 marks a threshold never reached.
 */
struct GrowthCertificate {
  GroupSpec group;
  ElementSet ground_set;
  std::uint64_t target = 0;  // stop once |span| >= target
  StageSchedule schedule = StageSchedule::three_stage;
  std::vector<GrowthStep> steps;
  std::vector<std::int64_t> stage_marks;
  std::uint64_t final_span = 1;
  bool reached_target = false;
  bool stalled = false;  // all remaining candidates had lambda = 0

  bool operator==(const GrowthCertificate& other) const;
};

// Grows by repeated best_increment until the span reaches `target`, the
// ground set is exhausted, or every remaining candidate has lambda zero
// (then no further step can ever help; recorded as stalled).
GrowthCertificate greedy_grow(const GroupSpec& g, const ElementSet& a,
                              std::uint64_t target,
                              StageSchedule schedule = StageSchedule::three_stage);

// Replays the chain from scratch, recomputing every lambda and span size.
// Throws verification_error on the first mismatch.
void verify_certificate(const GrowthCertificate& cert);

// Conservative integer threshold for the middle stage: ceil of an upper
// bound on 9 n^(3/4) / 8 (never claims the transition early).
std::uint64_t stage2_threshold(std::uint64_t n);

// Stage marks recomputed from span sizes; spans[t] = |span| after t steps.
std::vector<std::int64_t> compute_stage_marks(
    const std::vector<std::uint64_t>& spans, std::uint64_t ground_size,
    std::uint64_t n, StageSchedule schedule);

// --- the unit-set coverage pipeline ----------------------------------------

struct OlsonResult {
  bool covers = false;
  // True when both halves reached span > n/2, certifying coverage by the
  // pigeonhole sum |S| + |T| > n; otherwise decided by direct sigma.
  bool certified_by_halves = false;
  std::optional<std::uint64_t> missing_element;
  GrowthCertificate half1;
  GrowthCertificate half2;
};

/**
 * Decides sigma(A) = Z_n for A a set of units mod n: bipartitions A, grows
 * both halves greedily to span > n/2 (concurrently), and falls back to the
 * direct span when either half stalls short. Requires a cyclic group and
 * every element coprime to n ("not a unit modulo n").
 */
OlsonResult olson_pipeline(const GroupSpec& g, const ElementSet& a,
                           StageSchedule schedule = StageSchedule::three_stage);

// --- per-stage growth audit --------------------------------------------------

/**
 * One row per stage: did the stage's per-step lambda inequality hold at
 * every step whose hypothesis was met? Stage 3 hypotheses and bounds involve
 * n^(1/4); they are evaluated with certified directed rounding, so
 * `held_at` counts only steps that certainly conform. Rows are
 * informational: the inequalities are only guaranteed under size hypotheses
 * far beyond desk scale, so the audit records and never asserts.
 */
struct StageAuditRow {
  int stage = 0;
  std::uint64_t steps_in_scope = 0;
  std::uint64_t steps_conforming = 0;
  bool all_held = true;
  std::string note;
};

std::vector<StageAuditRow> stage_bound_audit(const GrowthCertificate& cert,
                                             std::uint64_t n);

}  // namespace sumsetlab
