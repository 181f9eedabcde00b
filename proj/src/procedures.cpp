#include "sumsetlab/procedures.hpp"

#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/errors.hpp"
#include "sumsetlab/setops.hpp"

namespace sumsetlab {

using bounds::bigint;

Bipartition antisymmetric_bipartition(const GroupSpec& g,
                                      const ElementSet& a) {
  if (a.universe() != g.order)
    throw std::invalid_argument("set does not belong to this group");
  if (a.contains(0)) throw std::domain_error("zero not allowed");
  Bipartition out{ElementSet(g.order), ElementSet(g.order)};
  std::vector<std::uint64_t> lone;
  a.for_each([&](std::uint64_t x) {
    const std::uint64_t nx = neg_index(g, x);
    if (nx == x)
      throw std::domain_error(
          "bipartition impossible for self-inverse element");
    if (a.contains(nx)) {
      if (x < nx) {
        out.first.insert(x);
        out.second.insert(nx);
      }
    } else {
      lone.push_back(x);
    }
  });
  // Alternate lone elements starting with the second half so that
  // |first| = floor(|A|/2) lands exactly.
  for (std::size_t i = 0; i < lone.size(); ++i)
    (i % 2 ? out.first : out.second).insert(lone[i]);
  return out;
}

std::uint64_t DecompositionReport::level_size_sum() const {
  std::uint64_t total = 0;
  for (const auto& level : levels) total += level.size();
  return total;
}

std::uint64_t DecompositionReport::punctured_size_sum() const {
  std::uint64_t total = 0;
  for (const auto& level : punctured_levels) total += level.size();
  return total;
}

DecompositionReport multiplicity_decomposition(const GroupSpec& g,
                                               const ElementSet& a,
                                               const Subgroup& h) {
  if (a.universe() != g.order)
    throw std::invalid_argument("set does not belong to this group");
  const QuotientView q = quotient(g, h);  // validates the subgroup
  DecompositionReport report;
  report.subgroup = h;
  report.set_size = a.count();
  report.set_size_outside_h = a.count() - a.intersection_count(h.carrier);

  std::vector<std::uint32_t> multiplicity(q.coset_count(), 0);
  a.for_each([&](std::uint64_t i) { multiplicity[q.coset_index[i]] += 1; });
  std::uint32_t max_mult = 0;
  for (std::uint32_t m : multiplicity) max_mult = std::max(max_mult, m);

  report.levels.resize(max_mult);
  report.punctured_levels.resize(max_mult);
  for (std::uint32_t ord = 0; ord < q.coset_count(); ++ord)
    for (std::uint32_t i = 0; i < multiplicity[ord]; ++i) {
      report.levels[i].push_back(ord);
      if (ord != 0) report.punctured_levels[i].push_back(ord);
    }

  const ElementSet span = sigma(g, a);
  report.sigma_size = span.count();
  report.h_is_span_stabilizer = stabilizer(g, span) == h;

  // Quotient arithmetic runs on H-saturated sets in G: the span of a set of
  // cosets is the same fold, seeded with the carrier of H.
  ElementSet total = h.carrier;
  for (const auto& level : report.punctured_levels) {
    ElementSet level_span = h.carrier;
    for (std::uint32_t ord : level)
      level_span |= shift(g, level_span, q.coset_reps[ord]);
    total = sumset(g, total, level_span);
  }
  report.quotient_sumset_size = total.count() / h.order();
  if (report.h_is_span_stabilizer) report.factorization_ok = (total == span);
  report.quotient_sumset = std::move(total);
  return report;
}

bool GrowthCertificate::operator==(const GrowthCertificate& other) const {
  return group == other.group && ground_set == other.ground_set &&
         target == other.target && schedule == other.schedule &&
         steps == other.steps && stage_marks == other.stage_marks &&
         final_span == other.final_span &&
         reached_target == other.reached_target && stalled == other.stalled;
}

std::uint64_t stage2_threshold(std::uint64_t n) {
  // 9 n^(3/4) / 8 <= 9 (u+1) / (8 * 2^64) with u = floor(n^(3/4) 2^64).
  const bigint u = bounds::fourth_root_floor_scaled(bigint(n) * n * n, 64);
  const bigint denom = bigint(8) << 64;
  const bigint up = (9 * (u + 1) + denom - 1) / denom;
  return up.convert_to<std::uint64_t>();
}

std::vector<std::int64_t> compute_stage_marks(
    const std::vector<std::uint64_t>& spans, std::uint64_t ground_size,
    std::uint64_t n, StageSchedule schedule) {
  auto least_t = [&](auto&& pred) -> std::int64_t {
    for (std::size_t t = 0; t < spans.size(); ++t)
      if (pred(t, spans[t])) return static_cast<std::int64_t>(t);
    return -1;
  };
  const std::int64_t t1 = least_t([&](std::size_t t, std::uint64_t s) {
    return 2 * s >= ground_size - std::min<std::uint64_t>(t, ground_size);
  });
  if (schedule == StageSchedule::three_stage) {
    const std::uint64_t t2_threshold = stage2_threshold(n);
    const std::int64_t t2 = least_t(
        [&](std::size_t, std::uint64_t s) { return s >= t2_threshold; });
    const std::int64_t t3 =
        least_t([&](std::size_t, std::uint64_t s) { return 2 * s > n; });
    return {t1, t2, t3};
  }
  // Doubling schedule: after the opening stage, one mark each time the span
  // doubles, until it passes n/2. Diagnostic only, no certified bound.
  std::vector<std::int64_t> marks{t1};
  if (t1 < 0) return marks;
  std::uint64_t threshold = 2 * spans[static_cast<std::size_t>(t1)];
  for (std::size_t t = static_cast<std::size_t>(t1); t < spans.size(); ++t) {
    if (spans[t] >= threshold) {
      marks.push_back(static_cast<std::int64_t>(t));
      if (2 * spans[t] > n) break;
      threshold = 2 * spans[t];
    }
  }
  return marks;
}

GrowthCertificate greedy_grow(const GroupSpec& g, const ElementSet& a,
                              std::uint64_t target, StageSchedule schedule) {
  if (a.universe() != g.order)
    throw std::invalid_argument("set does not belong to this group");
  if (a.contains(0)) throw std::domain_error("zero not allowed");
  GrowthCertificate cert;
  cert.group = g;
  cert.ground_set = a;
  cert.target = target;
  cert.schedule = schedule;

  ElementSet span(g.order);
  span.insert(0);
  ElementSet remaining = a;
  std::vector<std::uint64_t> spans{1};
  while (span.count() < target && !remaining.empty()) {
    const auto [c, l] = best_increment(g, span, remaining);
    if (l == 0) {
      // lambda depends only on the span, which can no longer change.
      cert.stalled = true;
      break;
    }
    span |= shift(g, span, c);
    remaining.erase(c);
    cert.steps.push_back(GrowthStep{c, l, span.count()});
    spans.push_back(span.count());
  }
  cert.final_span = span.count();
  cert.reached_target = cert.final_span >= target;
  cert.stage_marks = compute_stage_marks(spans, a.count(), g.order, schedule);
  return cert;
}

void verify_certificate(const GrowthCertificate& cert) {
  const GroupSpec& g = cert.group;
  auto fail = [](std::size_t step, const std::string& what) -> void {
    throw verification_error("certificate replay failed at step " +
                             std::to_string(step) + ": " + what);
  };
  ElementSet span(g.order);
  span.insert(0);
  ElementSet used(g.order);
  std::vector<std::uint64_t> spans{1};
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const GrowthStep& step = cert.steps[i];
    if (!cert.ground_set.contains(step.element))
      fail(i, "element not in the ground set");
    if (used.contains(step.element)) fail(i, "element chosen twice");
    used.insert(step.element);
    const std::uint64_t l = lambda(g, span, step.element);
    if (l != step.lambda) fail(i, "lambda mismatch");
    span |= shift(g, span, step.element);
    if (span.count() != step.span_after) fail(i, "span size mismatch");
    spans.push_back(span.count());
  }
  if (span.count() != cert.final_span)
    throw verification_error("certificate final span mismatch");
  if (sigma(g, used) != span)
    throw verification_error("certificate span is not sigma of its prefix");
  const auto marks = compute_stage_marks(spans, cert.ground_set.count(),
                                         g.order, cert.schedule);
  if (marks != cert.stage_marks)
    throw verification_error("certificate stage marks mismatch");
}

OlsonResult olson_pipeline(const GroupSpec& g, const ElementSet& a,
                           StageSchedule schedule) {
  if (g.factors.size() != 1)
    throw std::invalid_argument("pipeline requires a cyclic group");
  if (a.universe() != g.order)
    throw std::invalid_argument("set does not belong to this group");
  const std::uint64_t n = g.order;
  a.for_each([&](std::uint64_t x) {
    if (std::gcd(x, n) != 1) throw std::domain_error("not a unit modulo n");
  });
  Bipartition halves = antisymmetric_bipartition(g, a);
  const std::uint64_t target = n / 2 + 1;  // span > n/2

  auto grow1 = std::async(std::launch::async, [&] {
    return greedy_grow(g, halves.first, target, schedule);
  });
  OlsonResult result;
  result.half2 = greedy_grow(g, halves.second, target, schedule);
  result.half1 = grow1.get();

  if (result.half1.reached_target && result.half2.reached_target) {
    // |sigma(B1)| + |sigma(B2)| > n pins sigma(B1) + sigma(B2) = Z_n, and
    // that sumset sits inside sigma(A).
    result.covers = true;
    result.certified_by_halves = true;
    return result;
  }
  const ElementSet span = sigma(g, a);
  result.covers = span.count() == n;
  if (!result.covers) result.missing_element = span.complement().front();
  return result;
}

std::vector<StageAuditRow> stage_bound_audit(const GrowthCertificate& cert,
                                             std::uint64_t n) {
  const std::uint64_t ground = cert.ground_set.count();
  std::vector<StageAuditRow> rows(3);
  for (int s = 0; s < 3; ++s) rows[s].stage = s + 1;

  // Certified bracketing of n^(1/4) at 64 fractional bits.
  const bigint root4 = bounds::fourth_root_floor_scaled(bigint(n), 64);
  const bigint one64 = bigint(1) << 64;

  std::uint64_t span_before = 1;
  std::int64_t t2 = -1;
  const std::uint64_t t2_threshold = stage2_threshold(n);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const std::uint64_t t = i;  // steps taken so far
    const std::uint64_t c_size = ground - t;
    const std::uint64_t def = std::min(span_before, n - span_before);
    const std::uint64_t l = cert.steps[i].lambda;

    // Opening stage: while the span is at most half the candidate pool,
    // each step should add at least half the span.
    if (2 * span_before <= c_size) {
      rows[0].steps_in_scope += 1;
      if (2 * l >= span_before) rows[0].steps_conforming += 1;
    }
    // Middle stage: once def(S) >= |C|/2, each step should add |C|/8.
    if (2 * def >= c_size) {
      rows[1].steps_in_scope += 1;
      if (8 * l >= c_size) rows[1].steps_conforming += 1;
    }
    // Final stage: when |S| >= n^(1/4) |C| certainly holds, the increment
    // should be at least (1 - 4 n^(-1/4)) |C|. Both sides bracketed so a
    // conforming step is certain, a nonconforming one may be borderline.
    if (bigint(span_before) * one64 >= (root4 + 1) * c_size) {
      rows[2].steps_in_scope += 1;
      const bigint rhs_up_num = bigint(c_size) * ((root4 + 1) - (bigint(4) << 64));
      if (bigint(l) * (root4 + 1) >= rhs_up_num) rows[2].steps_conforming += 1;
    }
    if (t2 < 0 && span_before >= t2_threshold)
      t2 = static_cast<std::int64_t>(t);
    span_before = cert.steps[i].span_after;
  }
  if (t2 < 0 && span_before >= t2_threshold)
    t2 = static_cast<std::int64_t>(cert.steps.size());
  for (auto& row : rows)
    row.all_held = row.steps_conforming == row.steps_in_scope;

  // Recorded, never asserted: the slack quantity |A| - t2 against
  // sqrt(n) + 5 n^(1/4) (upper bound shown).
  std::ostringstream note;
  if (t2 >= 0) {
    const bigint slack_threshold_up =
        (bounds::sqrt_floor_scaled(bigint(n), 64) + 1 + 5 * (root4 + 1) +
         one64 - 1) >>
        64;
    note << "ground_minus_t2=" << (ground - static_cast<std::uint64_t>(t2))
         << " sqrt_n_plus_5n14_up=" << slack_threshold_up.str();
  } else {
    note << "stage2 threshold never reached";
  }
  rows[2].note = note.str();
  return rows;
}

}  // namespace sumsetlab
