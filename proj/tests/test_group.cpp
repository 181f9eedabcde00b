#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sumsetlab/errors.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/setops.hpp"
#include "sumsetlab/subgroup.hpp"

using namespace sumsetlab;

TEST_CASE("make_group computes orders") {
  CHECK(make_group({12}).order == 12);
  CHECK(make_group({2, 4}).order == 8);
  CHECK(make_group({}).order == 1);
  CHECK_THROWS_WITH_AS(make_group({4096, 4096, 2}), "group too large",
                       std::invalid_argument);
  CHECK_THROWS_AS(make_group({0}), std::invalid_argument);
  // configurable cap
  CHECK_THROWS_AS(make_group({100}, 64), std::invalid_argument);
  CHECK(make_group({64}, 64).order == 64);
}

TEST_CASE("group spec parsing and formatting") {
  CHECK(parse_group("Z12").factors == std::vector<std::uint32_t>{12});
  CHECK(parse_group("z2Xz4").factors == std::vector<std::uint32_t>{2, 4});
  CHECK(format_group(parse_group("Z2xZ4")) == "Z2xZ4");
  CHECK_THROWS_AS(parse_group(""), parse_error);
  CHECK_THROWS_AS(parse_group("12"), parse_error);
  CHECK_THROWS_AS(parse_group("ZxZ4"), parse_error);
  CHECK_THROWS_AS(parse_group("Z2 Z4"), parse_error);
}

TEST_CASE("element literals") {
  const GroupSpec g = make_group({2, 4});
  const Element e = parse_element(g, "1,3");
  CHECK(e.coords == std::vector<std::uint32_t>{1, 3});
  CHECK(e.index == 1 + 3 * 2);
  CHECK(format_element(e) == "1,3");
  CHECK(parse_element(g, "-1,-1").index == parse_element(g, "1,3").index);
  CHECK_THROWS_AS(parse_element(g, "1"), parse_error);
  CHECK_THROWS_AS(parse_element(g, "1,a"), parse_error);

  const GroupSpec z9 = make_group({9});
  CHECK(parse_element(z9, "-2").index == 7);
}

TEST_CASE("modular arithmetic examples") {
  const GroupSpec z10 = make_group({10});
  CHECK(add(z10, element_from_index(z10, 7), element_from_index(z10, 5)).index ==
        2);

  const GroupSpec z2z4 = make_group({2, 4});
  const Element e = element_from_coords(z2z4, {1, 3});
  CHECK(neg(z2z4, e).coords == std::vector<std::uint32_t>{1, 1});

  const GroupSpec z9 = make_group({9});
  CHECK(smul(z9, 4, element_from_index(z9, 3)).index == 3);  // 12 mod 9
  CHECK(smul(z9, 0, element_from_index(z9, 5)).index == 0);
  CHECK(smul(z9, -1, element_from_index(z9, 5)).index == 4);

  Element bad = element_from_index(z10, 3);
  bad.coords[0] = 11;
  CHECK_THROWS_WITH_AS(add(z10, bad, bad), "invalid element",
                       std::invalid_argument);
}

TEST_CASE("index/coords round-trip everywhere") {
  for (const GroupSpec& g :
       {make_group({12}), make_group({2, 4}), make_group({3, 5, 4})}) {
    for (std::uint64_t i = 0; i < g.order; ++i) {
      const Element e = element_from_index(g, i);
      CHECK(element_from_coords(
                g, std::vector<std::int64_t>(e.coords.begin(), e.coords.end()))
                .index == i);
    }
  }
}

TEST_CASE("add is commutative with inverses, exhaustive on small groups") {
  for (const GroupSpec& g : {make_group({9}), make_group({2, 4})}) {
    for (std::uint64_t i = 0; i < g.order; ++i) {
      const Element x = element_from_index(g, i);
      CHECK(add(g, x, neg(g, x)).index == 0);
      for (std::uint64_t j = 0; j < g.order; ++j) {
        const Element y = element_from_index(g, j);
        CHECK(add(g, x, y).index == add(g, y, x).index);
        CHECK(add_index(g, i, j) == oracle::add(g, i, j));
      }
      CHECK(neg_index(g, i) == oracle::neg(g, i));
    }
  }
}

TEST_CASE("element_order examples and Lagrange") {
  const GroupSpec z12 = make_group({12});
  CHECK(element_order(z12, element_from_index(z12, 4)) == 3);
  CHECK(element_order(z12, element_from_index(z12, 0)) == 1);

  const GroupSpec z2z4 = make_group({2, 4});
  CHECK(element_order(z2z4, element_from_coords(z2z4, {1, 2})) == 2);

  // order(x) divides |G|, and matches the iterative oracle, exhaustively on
  // groups up to order 256.
  for (const GroupSpec& g : {make_group({256}), make_group({2, 4, 32}),
                             make_group({15, 15}), make_group({7, 11})}) {
    for (std::uint64_t i = 0; i < g.order; ++i) {
      const std::uint64_t o = element_order(g, element_from_index(g, i));
      CHECK(o == oracle::element_order(g, i));
      CHECK(g.order % o == 0);
    }
  }
}

TEST_CASE("generated subgroups") {
  const GroupSpec z12 = make_group({12});
  CHECK(generated_subgroup(z12, std::vector<std::uint64_t>{4}).carrier ==
        ElementSet::of(12, {0, 4, 8}));
  CHECK(generated_subgroup(z12, std::vector<std::uint64_t>{}).carrier ==
        ElementSet::of(12, {0}));
  // any unit generates Z_n
  for (std::uint64_t c : {1ull, 5ull, 7ull, 11ull})
    CHECK(generated_subgroup(z12, std::vector<std::uint64_t>{c}).order() == 12);

  // closure property: u + v and -u stay inside
  const GroupSpec z2z4 = make_group({2, 4});
  for (std::uint64_t a = 0; a < z2z4.order; ++a) {
    const Subgroup h = generated_subgroup(z2z4, std::vector<std::uint64_t>{a});
    CHECK(is_subgroup(z2z4, h.carrier));
    h.carrier.for_each([&](std::uint64_t u) {
      CHECK(h.carrier.contains(neg_index(z2z4, u)));
      h.carrier.for_each([&](std::uint64_t v) {
        CHECK(h.carrier.contains(add_index(z2z4, u, v)));
      });
    });
  }
}

TEST_CASE("quotients") {
  const GroupSpec z12 = make_group({12});
  const QuotientView q6 = quotient(z12, generated_subgroup(z12, std::vector<std::uint64_t>{6}));
  CHECK(q6.coset_count() == 6);
  CHECK(q6.coset_reps == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5});
  CHECK(q6.coset_of(0) == 0);
  CHECK(q6.coset_of(7) == 1);

  const QuotientView q1 = quotient(z12, trivial_subgroup(z12));
  CHECK(q1.coset_count() == 12);

  const GroupSpec z2z4 = make_group({2, 4});
  const Subgroup h = generated_subgroup(z2z4, std::vector<std::uint64_t>{element_from_coords(z2z4, {0, 2}).index});
  const QuotientView q = quotient(z2z4, h);
  CHECK(q.coset_count() == 4);
  CHECK(q.coset_count() * h.order() == z2z4.order);

  // not-a-subgroup input is rejected
  Subgroup bogus{ElementSet::of(12, {0, 1})};
  CHECK_THROWS_WITH_AS(quotient(z12, bogus), "not a subgroup",
                       std::invalid_argument);

  // coset arithmetic through representatives
  CHECK(coset_add(z12, q6, 3, 4) == 1);
  CHECK(coset_members(z12, q6, 2) == ElementSet::of(12, {2, 8}));
}

TEST_CASE("subgroup enumeration is complete on known lattices") {
  // Z12 has one subgroup per divisor of 12.
  CHECK(enumerate_subgroups(make_group({12})).size() == 6);
  // Z2 x Z2 has the trivial group, three lines, and the whole plane.
  CHECK(enumerate_subgroups(make_group({2, 2})).size() == 5);
  // Z2^3: 1 + 7 + 7 + 1 subspaces.
  CHECK(enumerate_subgroups(make_group({2, 2, 2})).size() == 16);
  CHECK_THROWS_AS(enumerate_subgroups(make_group({8192})),
                  std::invalid_argument);
}
