#include "sumsetlab/search.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "sumsetlab/errors.hpp"
#include "sumsetlab/setops.hpp"

namespace sumsetlab::search {

namespace {

using u128 = unsigned __int128;

// Numeric comparison of bitmasks (high word first).
bool mask_less(const ElementSet& a, const ElementSet& b) {
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = wa.size(); i-- > 0;)
    if (wa[i] != wb[i]) return wa[i] < wb[i];
  return false;
}

struct Best {
  std::uint64_t sigma_size = 0;
  std::uint64_t card = 0;
  std::uint64_t stab_order = 1;
  ElementSet witness;
};

// Is (s1, c1, w1) a strictly better minimum than (s2, c2, w2) under the key
// (ratio, cardinality, bitmask)?
bool key_less(std::uint64_t s1, std::uint64_t c1, const ElementSet& w1,
              std::uint64_t s2, std::uint64_t c2, const ElementSet& w2) {
  const u128 lhs = u128(s1) * c2 * c2;
  const u128 rhs = u128(s2) * c1 * c1;
  if (lhs != rhs) return lhs < rhs;
  if (c1 != c2) return c1 < c2;
  return mask_less(w1, w2);
}

struct MinScanAcc {
  std::vector<std::optional<Best>> by_card;
  std::optional<Best> overall;

  void visit(const GroupSpec& g, const ElementSet& chosen,
             const ElementSet& span) {
    const std::uint64_t card = chosen.count();
    if (card == 0) return;
    const Subgroup stab = stabilizer(g, span);
    if (!stab.is_trivial()) return;
    const std::uint64_t size = span.count();
    auto& slot = by_card[card];
    if (!slot || size < slot->sigma_size ||
        (size == slot->sigma_size && mask_less(chosen, slot->witness)))
      slot = Best{size, card, stab.order(), chosen};
    if (!overall || key_less(size, card, chosen, overall->sigma_size,
                             overall->card, overall->witness))
      overall = Best{size, card, stab.order(), chosen};
  }

  // Minima are taken over a total order, so merging partition results is
  // order-independent and reproduces the sequential scan exactly.
  void merge(const MinScanAcc& other) {
    for (std::size_t card = 0; card < by_card.size(); ++card) {
      const auto& theirs = other.by_card[card];
      if (!theirs) continue;
      auto& ours = by_card[card];
      if (!ours || theirs->sigma_size < ours->sigma_size ||
          (theirs->sigma_size == ours->sigma_size &&
           mask_less(theirs->witness, ours->witness)))
        ours = *theirs;
    }
    if (other.overall &&
        (!overall ||
         key_less(other.overall->sigma_size, other.overall->card,
                  other.overall->witness, overall->sigma_size, overall->card,
                  overall->witness)))
      overall = *other.overall;
  }
};

// Depth-first over subsets of `elems`, maintaining sigma incrementally:
// sigma(B u {c}) = sigma(B) | (sigma(B) + c).
template <class Visit>
void dfs_subsets(const GroupSpec& g, const std::vector<std::uint64_t>& elems,
                 std::size_t level, std::vector<ElementSet>& sig_stack,
                 ElementSet& chosen, Visit&& visit) {
  if (level == elems.size()) {
    visit(chosen, sig_stack[level]);
    return;
  }
  sig_stack[level + 1] = sig_stack[level];
  dfs_subsets(g, elems, level + 1, sig_stack, chosen, visit);
  const std::uint64_t c = elems[level];
  sig_stack[level + 1] = sig_stack[level] | shift(g, sig_stack[level], c);
  chosen.insert(c);
  dfs_subsets(g, elems, level + 1, sig_stack, chosen, visit);
  chosen.erase(c);
}

// Same, branching over inverse pairs: skip, take x, or take -x.
template <class Visit>
void dfs_pair_subsets(const GroupSpec& g,
                      const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                      std::size_t level, std::vector<ElementSet>& sig_stack,
                      ElementSet& chosen, Visit&& visit) {
  if (level == pairs.size()) {
    visit(chosen, sig_stack[level]);
    return;
  }
  sig_stack[level + 1] = sig_stack[level];
  dfs_pair_subsets(g, pairs, level + 1, sig_stack, chosen, visit);
  for (const std::uint64_t c : {pairs[level].first, pairs[level].second}) {
    sig_stack[level + 1] = sig_stack[level] | shift(g, sig_stack[level], c);
    chosen.insert(c);
    dfs_pair_subsets(g, pairs, level + 1, sig_stack, chosen, visit);
    chosen.erase(c);
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> inverse_pairs(
    const GroupSpec& g) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t x = 1; x < g.order; ++x) {
    const std::uint64_t nx = neg_index(g, x);
    if (x < nx) pairs.emplace_back(x, nx);
  }
  return pairs;
}

SearchRow make_row(const GroupSpec& g, const Best& b, const char* bound,
                   bool satisfied) {
  SearchRow row;
  row.group = format_group(g);
  row.witness = b.witness.indices();
  row.card = b.card;
  row.sigma_size = b.sigma_size;
  row.stab_order = b.stab_order;
  row.ratio_num = b.sigma_size;
  row.ratio_den = b.card * b.card;
  row.bound = bound;
  row.satisfied = satisfied;
  return row;
}

// Next bitmask with the same popcount (Gosper).
std::uint64_t next_combination(std::uint64_t m) {
  const std::uint64_t c = m & (~m + 1);
  const std::uint64_t r = m + c;
  return (((r ^ m) >> 2) / c) | r;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 value = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace

SearchReport min_ratio_scan(const GroupSpec& g, bool require_antisymmetric,
                            std::optional<std::uint64_t> sample_budget,
                            std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.mode = require_antisymmetric ? "min_ratio_antisym" : "min_ratio";
  report.group = format_group(g);
  report.seed = seed;

  MinScanAcc acc;
  acc.by_card.resize(g.order);

  const std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs =
      require_antisymmetric
          ? inverse_pairs(g)
          : std::vector<std::pair<std::uint64_t, std::uint64_t>>{};
  std::vector<std::uint64_t> elems;
  if (!require_antisymmetric)
    for (std::uint64_t x = 1; x < g.order; ++x) elems.push_back(x);

  double exhaustive_count = require_antisymmetric
                                ? std::pow(3.0, double(pairs.size()))
                                : std::pow(2.0, double(elems.size()));
  const bool exhaustive = exhaustive_count <= double(1 << 24);
  if (!exhaustive && !sample_budget)
    throw std::invalid_argument(
        "enumeration universe too large; supply a sample budget");

  if (exhaustive) {
    report.universe = static_cast<std::uint64_t>(exhaustive_count);
    const std::size_t depth =
        require_antisymmetric ? pairs.size() : elems.size();
    const std::size_t branching = require_antisymmetric ? 3 : 2;

    // Partition the enumeration by fixing the first `split` decisions per
    // task; subtrees are equal-sized, results merge deterministically.
    std::size_t split = 0;
    std::size_t tasks = 1;
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw > 1 && exhaustive_count >= double(1 << 16)) {
      while (split < depth && tasks < 2 * hw) {
        ++split;
        tasks *= branching;
      }
    }

    auto run_partition = [&](std::size_t task_id) {
      MinScanAcc local;
      local.by_card.resize(g.order);
      std::vector<ElementSet> sig_stack(depth + 1, ElementSet(g.order));
      sig_stack[0].insert(0);
      ElementSet chosen(g.order);
      auto include = [&](std::size_t level, std::uint64_t c) {
        sig_stack[level + 1] =
            sig_stack[level] | shift(g, sig_stack[level], c);
        chosen.insert(c);
      };
      std::size_t rem = task_id;
      for (std::size_t level = 0; level < split; ++level) {
        const std::size_t decision = rem % branching;
        rem /= branching;
        if (decision == 0)
          sig_stack[level + 1] = sig_stack[level];
        else if (require_antisymmetric)
          include(level, decision == 1 ? pairs[level].first
                                       : pairs[level].second);
        else
          include(level, elems[level]);
      }
      auto visit = [&](const ElementSet& sel, const ElementSet& span) {
        local.visit(g, sel, span);
      };
      if (require_antisymmetric)
        dfs_pair_subsets(g, pairs, split, sig_stack, chosen, visit);
      else
        dfs_subsets(g, elems, split, sig_stack, chosen, visit);
      return local;
    };

    if (tasks == 1) {
      acc = run_partition(0);
    } else {
      std::vector<std::future<MinScanAcc>> futures;
      futures.reserve(tasks);
      for (std::size_t t = 0; t < tasks; ++t)
        futures.push_back(
            std::async(std::launch::async, run_partition, t));
      for (auto& f : futures) acc.merge(f.get());
    }
  } else {
    report.sampled = true;
    report.budget = *sample_budget;
    report.universe = *sample_budget;
    std::mt19937_64 rng(seed);
    for (std::uint64_t trial = 0; trial < *sample_budget; ++trial) {
      // Cycle through densities; dense samples usually span everything and
      // get filtered by the stabilizer test.
      const std::uint64_t density = 2 + trial % 16;
      ElementSet chosen(g.order);
      if (require_antisymmetric) {
        for (const auto& [x, nx] : pairs) {
          const std::uint64_t r = rng() % (2 * density);
          if (r == 0) chosen.insert(x);
          if (r == 1) chosen.insert(nx);
        }
      } else {
        for (std::uint64_t x = 1; x < g.order; ++x)
          if (rng() % density == 0) chosen.insert(x);
      }
      acc.visit(g, chosen, sigma(g, chosen));
    }
  }

  for (std::uint64_t card = 1; card < acc.by_card.size(); ++card)
    if (acc.by_card[card]) {
      const Best& b = *acc.by_card[card];
      report.rows.push_back(make_row(
          g, b, "quad64", 64 * b.sigma_size >= b.card * b.card));
    }
  if (acc.overall) {
    const Best& b = *acc.overall;
    report.best =
        make_row(g, b, "quad64", 64 * b.sigma_size >= b.card * b.card);
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

void revalidate(const SearchReport& report) {
  auto check_row = [&](const SearchRow& row) {
    const GroupSpec g = parse_group(row.group);
    ElementSet a(g.order);
    for (std::uint64_t i : row.witness) a.insert(i);
    if (a.count() != row.card)
      throw verification_error("report row: cardinality mismatch");
    const ElementSet span = sigma(g, a);
    if (span.count() != row.sigma_size)
      throw verification_error("report row: sigma size mismatch");
    if (stabilizer(g, span).order() != row.stab_order)
      throw verification_error("report row: stabilizer mismatch");
    if (row.ratio_num != row.sigma_size ||
        row.ratio_den != row.card * row.card)
      throw verification_error("report row: ratio fields mismatch");
    bool satisfied = row.satisfied;
    if (row.bound == "quad64")
      satisfied = 64 * row.sigma_size >= row.card * row.card;
    else if (row.bound == "olson-8sqrt")
      satisfied =
          row.card * row.card <= 64 * g.order && span.count() < g.order;
    if (satisfied != row.satisfied)
      throw verification_error("report row: bound flag mismatch");
  };
  for (const SearchRow& row : report.rows) check_row(row);
  if (report.best) check_row(*report.best);
}

std::uint64_t exact_g_oracle(const GroupSpec& g, const ElementSet& a,
                             std::uint64_t t) {
  if (a.universe() != g.order)
    throw std::invalid_argument("set does not belong to this group");
  const std::vector<std::uint64_t> elems = a.indices();
  const std::uint64_t q = elems.size();
  if (t > q) throw std::invalid_argument("t exceeds |A|");
  if (t == 0) return 1;
  if (t == q) return sigma(g, a).count();
  constexpr std::uint64_t kCap = 10'000'000;
  const std::uint64_t combos = binomial_capped(q, t, kCap);
  if (combos > kCap)
    throw std::invalid_argument("combination count " + std::to_string(combos) +
                                "+ exceeds the oracle cap");
  // Position-vector enumeration of t-combinations in lexicographic order;
  // |A| may exceed 64.
  std::vector<std::uint64_t> pos(t);
  for (std::uint64_t j = 0; j < t; ++j) pos[j] = j;
  std::uint64_t best = 0;
  while (true) {
    ElementSet b(g.order);
    for (std::uint64_t p : pos) b.insert(elems[p]);
    best = std::max(best, sigma(g, b).count());
    std::uint64_t i = t;
    while (i > 0 && pos[i - 1] == q - t + (i - 1)) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::uint64_t j = i; j < t; ++j) pos[j] = pos[j - 1] + 1;
  }
  return best;
}

NoncoverResult max_coprime_noncovering(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("below domain");
  const GroupSpec g = make_group({static_cast<std::uint32_t>(n)});
  std::vector<std::uint64_t> units;
  for (std::uint64_t x = 1; x < n; ++x)
    if (std::gcd(x, n) == 1) units.push_back(x);
  if (units.size() > 24)
    throw std::invalid_argument("phi(n) too large for exhaustive search");

  NoncoverResult result;
  result.n = n;
  result.phi = units.size();
  result.witness = ElementSet(g.order);
  bool found = false;
  std::vector<ElementSet> sig_stack(units.size() + 1, ElementSet(g.order));
  sig_stack[0].insert(0);
  ElementSet chosen(g.order);
  dfs_subsets(g, units, 0, sig_stack, chosen,
              [&](const ElementSet& sel, const ElementSet& span) {
                if (span.count() == n) return;
                const std::uint64_t card = sel.count();
                if (!found || card > result.max_card ||
                    (card == result.max_card && mask_less(sel, result.witness))) {
                  found = true;
                  result.max_card = card;
                  result.witness = sel;
                }
              });
  result.within_8sqrt = result.max_card * result.max_card <= 64 * n;
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t next_prime_above(std::uint64_t n) {
  std::uint64_t m = n + 1;
  while (!is_prime(m)) ++m;
  return m;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

ConstructionResult construction_family(ConstructionKind kind,
                                       std::uint64_t param) {
  ConstructionResult out;
  if (kind == ConstructionKind::interval) {
    if (param < 1 || param > 1'000'000)
      throw std::invalid_argument("interval parameter out of range");
    const std::uint64_t big_n = next_prime_above(2 * param * (param + 1));
    out.group = make_group({static_cast<std::uint32_t>(big_n)});
    out.set = ElementSet(big_n);
    for (std::uint64_t k = 1; k <= param; ++k) {
      out.set.insert(k);
      out.set.insert(big_n - k);
    }
    const ElementSet span = sigma(out.group, out.set);
    out.sigma_size = span.count();
    out.checks.push_back(
        {"sigma_size == n(n+1)+1", span.count() == param * (param + 1) + 1});
    out.checks.push_back(
        {"stabilizer trivial", stabilizer(out.group, span).is_trivial()});
  } else {
    if (!is_prime(param) || param == 2)
      throw std::invalid_argument("param not prime where required (odd prime)");
    const std::uint64_t n = param * param;
    out.group = make_group({static_cast<std::uint32_t>(n)});
    out.set = ElementSet(n);
    for (std::uint64_t k = 1; k < param; ++k) {
      out.set.insert(k);
      out.set.insert(n - k);
    }
    bool all_units = true;
    out.set.for_each([&](std::uint64_t x) {
      if (std::gcd(x, n) != 1) all_units = false;
    });
    const ElementSet span = sigma(out.group, out.set);
    out.sigma_size = span.count();
    const std::uint64_t hole = param * (param - 1) / 2 + 1;
    out.checks.push_back({"all elements are units", all_units});
    out.checks.push_back({"|A| == 2p-2", out.set.count() == 2 * param - 2});
    out.checks.push_back({"sigma(A) != Z_n", span.count() != n});
    out.checks.push_back(
        {"p(p-1)/2+1 not in sigma(A)", !span.contains(hole)});
  }
  out.all_pass = true;
  for (const NamedCheck& c : out.checks) out.all_pass = out.all_pass && c.pass;
  return out;
}

std::optional<std::pair<ElementSet, Subgroup>> find_nontrivial_stab_witness(
    const GroupSpec& g) {
  if (g.order > 16)
    throw std::invalid_argument("exhaustive witness scan limited to |G| <= 16");
  const std::uint64_t m = g.order - 1;  // candidates: nonzero elements
  for (std::uint64_t card = 1; card <= m; ++card) {
    const std::uint64_t last = (std::uint64_t{1} << m) - 1;
    std::uint64_t mask = (std::uint64_t{1} << card) - 1;
    while (true) {
      ElementSet a(g.order);
      for (std::uint64_t j = 0; j < m; ++j)
        if (mask & (std::uint64_t{1} << j)) a.insert(j + 1);
      const Subgroup stab = stabilizer(g, sigma(g, a));
      if (stab.order() > 1 && stab.order() < g.order)
        return std::make_pair(std::move(a), stab);
      if ((mask | (mask - 1)) >= last) break;
      mask = next_combination(mask);
    }
  }
  return std::nullopt;
}

}  // namespace sumsetlab::search
