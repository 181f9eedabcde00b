#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sumsetlab/errors.hpp"
#include "sumsetlab/set_io.hpp"
#include "sumsetlab/setops.hpp"

using namespace sumsetlab;

TEST_CASE("shift matches the per-element oracle, exhaustive small groups") {
  std::mt19937_64 rng(7);
  for (const GroupSpec& g :
       {make_group({10}), make_group({6}), make_group({2, 4}),
        make_group({3, 5}), make_group({2, 3, 4}), make_group({97})}) {
    for (int trial = 0; trial < 50; ++trial) {
      ElementSet s(g.order);
      for (std::uint64_t i = 0; i < g.order; ++i)
        if (rng() & 1) s.insert(i);
      for (std::uint64_t c = 0; c < g.order; ++c) {
        const ElementSet fast = shift(g, s, c);
        CHECK(fast == oracle::shift(g, s, c));
        CHECK(fast.count() == s.count());
      }
    }
  }
}

TEST_CASE("shift matches the oracle on multi-word universes") {
  // strides and windows that straddle word boundaries
  std::mt19937_64 rng(5);
  for (const GroupSpec& g :
       {make_group({1000}), make_group({3, 341}), make_group({129, 9}),
        make_group({2, 2, 450})}) {
    for (int trial = 0; trial < 8; ++trial) {
      ElementSet s(g.order);
      for (std::uint64_t i = 0; i < g.order; ++i)
        if (rng() % 3 == 0) s.insert(i);
      for (int k = 0; k < 40; ++k) {
        const std::uint64_t c = rng() % g.order;
        CHECK(shift(g, s, c) == oracle::shift(g, s, c));
      }
    }
  }
}

TEST_CASE("shift examples") {
  const GroupSpec z10 = make_group({10});
  CHECK(shift(z10, ElementSet::of(10, {0, 1, 2}), 3) ==
        ElementSet::of(10, {3, 4, 5}));
  const ElementSet s = ElementSet::of(10, {1, 4, 9});
  CHECK(shift(z10, s, 0) == s);
  const GroupSpec z6 = make_group({6});
  CHECK(shift(z6, ElementSet::of(6, {0, 5}), 2) == ElementSet::of(6, {1, 2}));
}

TEST_CASE("shift of a full coset equals recomputed membership") {
  const GroupSpec g = make_group({2, 6});
  const Subgroup h = generated_subgroup(g, std::vector<std::uint64_t>{4});
  for (std::uint64_t c = 0; c < g.order; ++c) {
    ElementSet expect(g.order);
    h.carrier.for_each(
        [&](std::uint64_t u) { expect.insert(oracle::add(g, u, c)); });
    CHECK(shift(g, h.carrier, c) == expect);
  }
}

TEST_CASE("sigma examples and oracle agreement") {
  const GroupSpec z7 = make_group({7});
  CHECK(sigma(z7, ElementSet::of(7, {1, 2})) == ElementSet::of(7, {0, 1, 2, 3}));
  CHECK(sigma(z7, ElementSet(7)) == ElementSet::of(7, {0}));

  // A = {-10..-1, 1..10} in Z_201 spans 111 elements.
  const GroupSpec z201 = make_group({201});
  ElementSet a(201);
  for (std::uint64_t k = 1; k <= 10; ++k) {
    a.insert(k);
    a.insert(201 - k);
  }
  const ElementSet span = sigma(z201, a);
  CHECK(span.count() == 111);
  CHECK(span == oracle::sigma(z201, a));
}

TEST_CASE("sumset and iterated sumset") {
  const GroupSpec z7 = make_group({7});
  CHECK(sumset(z7, ElementSet::of(7, {0, 1}), ElementSet::of(7, {0, 2})) ==
        ElementSet::of(7, {0, 1, 2, 3}));
  const GroupSpec z10 = make_group({10});
  const ElementSet x = ElementSet::of(10, {0, 1});
  CHECK(iterated_sumset(z10, x, 1) == x);
  CHECK(iterated_sumset(z10, x, 3) == ElementSet::of(10, {0, 1, 2, 3}));
  CHECK(sumset(z10, x, ElementSet(10)).empty());
  CHECK_THROWS_AS(iterated_sumset(z10, x, 0), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (const GroupSpec& g : {make_group({30}), make_group({4, 9})}) {
    for (int trial = 0; trial < 20; ++trial) {
      ElementSet u(g.order), v(g.order);
      for (std::uint64_t i = 0; i < g.order; ++i) {
        if (rng() % 3 == 0) u.insert(i);
        if (rng() % 3 == 0) v.insert(i);
      }
      CHECK(sumset(g, u, v) == oracle::sumset(g, u, v));
    }
  }
}

TEST_CASE("star closure") {
  const GroupSpec z7 = make_group({7});
  CHECK(star_closure(z7, ElementSet::of(7, {1, 2})) ==
        ElementSet::of(7, {0, 1, 2, 5, 6}));
  CHECK(star_closure(z7, ElementSet(7)) == ElementSet::of(7, {0}));
  const GroupSpec z6 = make_group({6});
  CHECK(star_closure(z6, ElementSet::of(6, {3})) == ElementSet::of(6, {0, 3}));
}

TEST_CASE("stabilizer examples and oracle agreement") {
  const GroupSpec z6 = make_group({6});
  CHECK(stabilizer(z6, ElementSet::of(6, {0, 3})).carrier ==
        ElementSet::of(6, {0, 3}));
  CHECK(stabilizer(z6, ElementSet::of(6, {0, 1})).carrier ==
        ElementSet::of(6, {0}));
  CHECK(stabilizer(z6, ElementSet::full(6)).carrier == ElementSet::full(6));
  CHECK(stabilizer(z6, ElementSet(6)).carrier == ElementSet::full(6));

  std::mt19937_64 rng(13);
  for (const GroupSpec& g : {make_group({12}), make_group({2, 8})}) {
    for (int trial = 0; trial < 40; ++trial) {
      ElementSet s(g.order);
      for (std::uint64_t i = 0; i < g.order; ++i)
        if (rng() & 1) s.insert(i);
      CHECK(stabilizer(g, s).carrier == oracle::stabilizer(g, s));
    }
  }
}

TEST_CASE("lambda and rho examples") {
  const GroupSpec z10 = make_group({10});
  const ElementSet s = ElementSet::of(10, {0, 1, 2});
  CHECK(lambda(z10, s, 0) == 0);
  CHECK(lambda(z10, s, 1) == 1);
  CHECK(lambda(z10, s, 5) == 3);

  const GroupSpec z8 = make_group({8});
  const ElementSet t = ElementSet::of(8, {0, 1, 3});
  CHECK(rho(z8, t, 0) == t.count());
  CHECK(rho(z8, t, 1) == 1);
}

TEST_CASE("rho/lambda duality and the difference-count identity") {
  std::mt19937_64 rng(17);
  for (const GroupSpec& g : {make_group({8}), make_group({2, 4}),
                             make_group({25}), make_group({3, 9})}) {
    for (int trial = 0; trial < 30; ++trial) {
      ElementSet s(g.order);
      for (std::uint64_t i = 0; i < g.order; ++i)
        if (rng() & 1) s.insert(i);
      std::uint64_t total = 0;
      for (std::uint64_t d = 0; d < g.order; ++d) {
        const std::uint64_t r = rho(g, s, d);
        CHECK(r == oracle::rho(g, s, d));
        CHECK(r + lambda(g, s, d) == s.count());
        total += r;
      }
      CHECK(total == s.count() * s.count());
    }
  }
}

TEST_CASE("deficiency") {
  const GroupSpec z10 = make_group({10});
  CHECK(deficiency(ElementSet(10)) == 0);
  CHECK(deficiency(ElementSet::of(10, {0, 1, 2, 3})) == 4);
  const QuotientView q =
      quotient(z10, generated_subgroup(z10, std::vector<std::uint64_t>{5}));
  const ElementSet s = ElementSet::of(10, {0, 1, 2});
  CHECK(deficiency(s, z10, q, 0) == 1);        // S n {0,5} = {0}
  CHECK(deficiency(coset_members(z10, q, 1), z10, q, 1) == 0);  // S = Q
}

TEST_CASE("level sets") {
  const GroupSpec z8 = make_group({8});
  const ElementSet s = ElementSet::of(8, {0, 1, 3});
  CHECK(level_set(z8, s, 0) == ElementSet::full(8));
  CHECK(level_set(z8, s, s.count() + 1).empty());
  CHECK(level_set(z8, s, 3) == ElementSet::of(8, {0}));
  // D_t decreasing in t
  for (std::uint64_t t = 1; t <= s.count(); ++t)
    CHECK(level_set(z8, s, t).is_subset_of(level_set(z8, s, t - 1)));
}

TEST_CASE("best increment with deterministic tie-break") {
  const GroupSpec z10 = make_group({10});
  CHECK(best_increment(z10, ElementSet::of(10, {0}), ElementSet::of(10, {3, 7})) ==
        std::pair<std::uint64_t, std::uint64_t>{3, 1});
  CHECK(best_increment(z10, ElementSet::full(10), ElementSet::of(10, {2, 9})) ==
        std::pair<std::uint64_t, std::uint64_t>{2, 0});
  CHECK(best_increment(z10, ElementSet::of(10, {0, 1, 2}),
                       ElementSet::of(10, {1, 5})) ==
        std::pair<std::uint64_t, std::uint64_t>{5, 3});
  CHECK_THROWS_WITH_AS(
      best_increment(z10, ElementSet::of(10, {0}), ElementSet(10)),
      "no candidates", std::invalid_argument);
}

TEST_CASE("coset profile") {
  const GroupSpec z12 = make_group({12});
  const QuotientView q =
      quotient(z12, generated_subgroup(z12, std::vector<std::uint64_t>{6}));

  const ElementSet s = ElementSet::of(12, {0, 1, 2, 6});
  const CosetProfile profile = coset_profile(s, z12, q, 1, 0);
  CHECK(profile.per_coset[0].in_count == 2);
  CHECK(profile.per_coset[0].out_count == 0);
  CHECK_FALSE(profile.per_coset[0].sparse);
  CHECK(profile.per_coset[0].dense);
  // counts add up per coset and in total
  std::uint64_t total = 0;
  for (const CosetCounts& c : profile.per_coset) {
    CHECK(c.in_count + c.out_count == q.subgroup.order());
    total += c.in_count;
  }
  CHECK(total == s.count());

  const CosetProfile empty_profile =
      coset_profile(ElementSet(12), z12, q, 1, 0);
  for (const CosetCounts& c : empty_profile.per_coset) {
    CHECK(c.sparse);
    CHECK(c.very_sparse);
    CHECK_FALSE(c.dense);  // threshold 1 < |H| = 2
  }
  // with threshold >= |H| the empty set's cosets are dense as well
  const CosetProfile wide =
      coset_profile(ElementSet(12), z12, q, 2, 0);
  for (const CosetCounts& c : wide.per_coset) {
    CHECK(c.sparse);
    CHECK(c.dense);
  }
  const CosetProfile full_profile =
      coset_profile(ElementSet::full(12), z12, q, 1, 0);
  for (const CosetCounts& c : full_profile.per_coset) CHECK(c.dense);
}

TEST_CASE("fold identity for sigma") {
  // sigma(B u {c}) = sigma(B) | (sigma(B) + c), exhaustive over Z10 \ {0}.
  const GroupSpec z10 = make_group({10});
  for (const ElementSet& b : oracle::nonzero_subsets(z10)) {
    const ElementSet base = sigma(z10, b);
    for (std::uint64_t c = 1; c < 10; ++c) {
      if (b.contains(c)) continue;
      ElementSet bc = b;
      bc.insert(c);
      CHECK(sigma(z10, bc) == (base | shift(z10, base, c)));
    }
  }
}

TEST_CASE("span factorization over bipartitions, Z7") {
  const GroupSpec z7 = make_group({7});
  for (const ElementSet& a : oracle::nonzero_subsets(z7)) {
    const auto elems = a.indices();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << elems.size());
         ++mask) {
      ElementSet b(z7.order);
      for (std::size_t j = 0; j < elems.size(); ++j)
        if (mask & (std::uint64_t{1} << j)) b.insert(elems[j]);
      CHECK(sigma(z7, a) == sumset(z7, sigma(z7, b), sigma(z7, a - b)));
    }
  }
}

TEST_CASE("stabilizer monotonicity under subset growth, Z12 spot checks") {
  const GroupSpec z12 = make_group({12});
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    ElementSet a(12);
    for (std::uint64_t i = 1; i < 12; ++i)
      if (rng() & 1) a.insert(i);
    ElementSet b = a;
    a.for_each([&](std::uint64_t i) {
      if (rng() & 1) b.erase(i);
    });
    CHECK(stabilizer(z12, sigma(z12, b))
              .carrier.is_subset_of(stabilizer(z12, sigma(z12, a)).carrier));
  }
}

TEST_CASE("set files round-trip with diagnostics") {
  const std::string text =
      "# interval example\n"
      "group: Z201\n"
      "1\n"
      "-1  # negative literals reduce mod n\n"
      "5\n";
  const SetFile parsed = parse_set_text(text, "inline");
  CHECK(parsed.group.order == 201);
  CHECK(parsed.set == ElementSet::of(201, {1, 200, 5}));

  const std::string round = write_set_text(parsed.group, parsed.set);
  CHECK(parse_set_text(round, "round").set == parsed.set);

  CHECK_THROWS_WITH_AS(parse_set_text("1\n2\n", "bad"),
                       "bad:1: expected 'group: <spec>'", parse_error);
  CHECK_THROWS_AS(parse_set_text("group: Z9\n1,2\n", "bad"), parse_error);
  CHECK_THROWS_AS(parse_set_text("# only a comment\n", "empty"), parse_error);
}

TEST_CASE("hex bitmaps round-trip") {
  const ElementSet s = ElementSet::of(12, {0, 3, 11});
  CHECK(ElementSet::from_hex(12, s.to_hex()) == s);
  CHECK(s.to_hex() == "0908");
  CHECK_THROWS_AS(ElementSet::from_hex(12, "09"), parse_error);
  CHECK_THROWS_AS(ElementSet::from_hex(12, "09ff"), parse_error);
  const ElementSet big = ElementSet::of(130, {0, 64, 129});
  CHECK(ElementSet::from_hex(130, big.to_hex()) == big);
}
