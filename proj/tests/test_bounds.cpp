#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sumsetlab/bounds.hpp"
#include "sumsetlab/setops.hpp"

using namespace sumsetlab;
using bounds::bigint;
using bounds::bigrat;

TEST_CASE("alpha sequence") {
  CHECK(bounds::alpha(9) == bigrat(1, 64));
  CHECK(bounds::alpha(10) == bigrat(3, 160));
  CHECK(bounds::alpha(11) == bigrat(9, 400));
  CHECK_THROWS_WITH_AS(bounds::alpha(8), "undefined index",
                       std::invalid_argument);
  for (int k = 9; k <= 64; ++k) {
    CHECK(bounds::alpha(k) < bigrat(1, 2));
    if (k > 9) {
      CHECK(bounds::alpha(k) >= bounds::alpha(k - 1));
      const bigrat expect =
          std::min(bigrat(6, 5) * bounds::alpha(k - 1),
                   bigrat(1, 2) - bigrat(1, bigint(1) << (k - 1)));
      CHECK(bounds::alpha(k) == expect);
    }
  }
}

TEST_CASE("n_k sequence") {
  CHECK(bounds::n_seq(9) == 1);
  CHECK(bounds::n_seq(10) == bigint(1) << 100);
  for (int k = 10; k <= 30; ++k) {
    CHECK(bounds::n_seq(k) > bigint(1) << (5 * k + 15));
    CHECK((bounds::n_seq(k) >> k) >= bounds::n_seq(k - 1));
  }
}

TEST_CASE("k_of_n") {
  CHECK(bounds::k_of_n(2) == 9);
  CHECK(bounds::k_of_n(1'000'000) == 9);
  CHECK(bounds::k_of_n(bigint(1) << 101) == 10);
  CHECK(bounds::k_of_n((bigint(1) << 101) - 1) == 9);
  CHECK(bounds::k_of_n(bigint(1) << 122) == 11);
  CHECK_THROWS_WITH_AS(bounds::k_of_n(1), "below domain",
                       std::invalid_argument);
}

TEST_CASE("f family chain identities") {
  CHECK(bounds::f(8) == bigrat(1, 128) - bigrat(1, 64));
  CHECK(bounds::f(8) < 0);
  CHECK(bounds::f(1000) == bigrat(1, 128) - bigrat(1, 1'000'000));
  // f2(100): m = 10, f'(10) = 1/128 - 2/100, scaled by (9/10)^2.
  CHECK(bounds::f2(100) ==
        bigrat(81, 100) * (bigrat(1, 128) - bigrat(2, 100)));
  for (const bigint n : {bigint(4), bigint(10), bigint(97), bigint(5000)}) {
    CHECK(bounds::f_prime(n) == bounds::f(n) - bigrat(1, n * n));
    const bigint m = boost::multiprecision::sqrt(n);
    CHECK(bounds::f2(n) ==
          bigrat((m - 1) * (m - 1), m * m) * bounds::f_prime(m));
  }
}

TEST_CASE("f_prime is nondecreasing on the evaluated domain") {
  CHECK(!bounds::first_f_prime_decrease(2, 2000));
  // across the k-jump at n = 2 n_10
  const bigint jump = bigint(2) * bounds::n_seq(10);
  CHECK(bounds::f_prime(jump) >= bounds::f_prime(jump - 1));
  CHECK(bounds::f_prime(jump + 1) >= bounds::f_prime(jump));
}

TEST_CASE("f3/f4 fixed point") {
  const bounds::Fixed64 f4_val = bounds::f4(10'000);
  CHECK(f4_val.to_double() == doctest::Approx(2.5).epsilon(1e-12));
  // exact at a perfect fourth power up to the ceil rounding step
  CHECK(f4_val.to_rational() >= bigrat(5, 2));
  CHECK(f4_val.to_rational() - bigrat(5, 2) < bigrat(1, bigint(1) << 32));

  const bounds::Fixed64 f3_val = bounds::f3(10'000);
  CHECK(f3_val.to_double() == doctest::Approx(5.02).epsilon(1e-12));
  CHECK(f3_val.to_rational() >= bigrat(251, 50));
  CHECK(f3_val.to_rational() - bigrat(251, 50) < bigrat(1, bigint(1) << 32));

  // round-up holds against long-double references on scattered inputs
  for (std::uint64_t n : {2ull, 3ull, 17ull, 1009ull, 123'456ull}) {
    const double root4 = std::pow(double(n), -0.25);
    const double f4_ref = 1 + 15 * root4;
    const double f3_ref = 2 * (f4_ref + 1 / std::sqrt(double(n)));
    CHECK(bounds::f4(n).to_double() == doctest::Approx(f4_ref).epsilon(1e-9));
    CHECK(bounds::f3(n).to_double() == doctest::Approx(f3_ref).epsilon(1e-9));
    CHECK(bounds::f4(n).to_rational() >= bigrat(1));
  }
}

TEST_CASE("n0 boundary is exact at 160^4") {
  const bigint boundary = bigint(160) * 160 * 160 * 160;
  CHECK(bounds::n0_check(boundary));
  CHECK_FALSE(bounds::n0_check(boundary - 1));
  CHECK(bounds::n0_check(boundary + 1));
  CHECK_FALSE(bounds::n0_check(1000));
}

TEST_CASE("certified log comparison against long-double references") {
  // log_{3/2}(n) <= n^(1/4): reference values are far from ties here.
  auto reference = [](double n) {
    return std::log(n) / std::log(1.5) <= std::pow(n, 0.25);
  };
  CHECK(bounds::log32_le_fourth_root(1));
  for (std::uint64_t n :
       {2ull, 16ull, 1000ull, 1'336'336ull, 1'500'625ull, 1'600'000ull,
        2'000'000ull, 655'360'000ull}) {
    CHECK(bounds::log32_le_fourth_root(n) == reference(double(n)));
  }
}

TEST_CASE("kneser examples") {
  const GroupSpec z7 = make_group({7});
  const auto r1 = bounds::kneser_check(
      z7, {ElementSet::of(7, {0, 1}), ElementSet::of(7, {0, 2})});
  CHECK(r1.holds);
  CHECK(r1.lhs == 4);
  CHECK(r1.rhs == 3);
  CHECK(r1.stab.is_trivial());

  const auto r2 = bounds::kneser_check(z7, {ElementSet::of(7, {1, 3, 5})});
  CHECK(r2.holds);
  CHECK(r2.lhs == 3);
  CHECK(r2.rhs == 3);

  const GroupSpec z6 = make_group({6});
  const auto r3 = bounds::kneser_check(
      z6, {ElementSet::of(6, {0, 3}), ElementSet::of(6, {0, 3})});
  CHECK(r3.holds);
  CHECK(r3.lhs == 2);
  CHECK(r3.rhs == 2);
  CHECK(r3.stab.carrier == ElementSet::of(6, {0, 3}));

  CHECK_THROWS_WITH_AS(
      bounds::kneser_check(z6, {ElementSet(6), ElementSet::of(6, {1})}),
      "Kneser hypothesis violated", std::invalid_argument);
  CHECK_THROWS_AS(bounds::kneser_check(z6, {}), std::invalid_argument);
}

TEST_CASE("kneser holds over random triples") {
  std::mt19937_64 rng(29);
  for (const GroupSpec& g : {make_group({60}), make_group({8, 8})}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<ElementSet> sets;
      for (int i = 0; i < 3; ++i) {
        ElementSet s(g.order);
        while (s.empty())
          for (std::uint64_t x = 0; x < g.order; ++x)
            if (rng() % 4 == 0) s.insert(x);
        sets.push_back(std::move(s));
      }
      CHECK(bounds::kneser_check(g, sets).holds);
    }
  }
}

TEST_CASE("theorem bound checks") {
  const GroupSpec z7 = make_group({7});
  const ElementSet singleton = ElementSet::of(7, {1});
  const auto quad = bounds::theorem_bound_check(z7, singleton,
                                                bounds::BoundKind::quad64);
  CHECK(quad.applicable);
  CHECK(quad.satisfied);
  CHECK(quad.ratio == bigrat(2));

  // ratio for the interval family in Z201
  const GroupSpec z201 = make_group({201});
  ElementSet a(201);
  for (std::uint64_t k = 1; k <= 10; ++k) {
    a.insert(k);
    a.insert(201 - k);
  }
  const auto interval_check =
      bounds::theorem_bound_check(z201, a, bounds::BoundKind::quad64);
  CHECK(interval_check.applicable);
  CHECK(interval_check.satisfied);
  CHECK(interval_check.ratio == bigrat(111, 400));
  // the interval family is symmetric, so the antisymmetric hypothesis fails
  CHECK_FALSE(bounds::theorem_bound_check(z201, a,
                                          bounds::BoundKind::alpha_antisym)
                  .applicable);
  // its antisymmetric half does qualify
  ElementSet half(201);
  for (std::uint64_t k = 1; k <= 10; ++k) half.insert(k);
  const auto alpha_check =
      bounds::theorem_bound_check(z201, half, bounds::BoundKind::alpha_antisym);
  CHECK(alpha_check.applicable);
  CHECK(alpha_check.satisfied);

  // hypothesis gates
  const auto with_zero = bounds::theorem_bound_check(
      z7, ElementSet::of(7, {0, 1}), bounds::BoundKind::quad64);
  CHECK_FALSE(with_zero.applicable);
  const auto not_antisym = bounds::theorem_bound_check(
      z7, ElementSet::of(7, {1, 6}), bounds::BoundKind::alpha_antisym);
  CHECK_FALSE(not_antisym.applicable);
  const auto empty = bounds::theorem_bound_check(z7, ElementSet(7),
                                                 bounds::BoundKind::alpha_antisym);
  CHECK_FALSE(empty.applicable);  // |A| < n_9 = 1
  const auto tiny = bounds::theorem_bound_check(z7, singleton,
                                                bounds::BoundKind::quarter);
  CHECK_FALSE(tiny.applicable);  // f needs |A| >= 2

  const auto quarter = bounds::theorem_bound_check(
      z201, a, bounds::BoundKind::quarter);
  CHECK(quarter.applicable);
  // f(20) = 1/128 - 1/400; 111 >= f(20) * 400 = 3.125 - 1
  CHECK(quarter.satisfied);
}

TEST_CASE("bound names round-trip") {
  using bounds::BoundKind;
  for (BoundKind k : {BoundKind::quad64, BoundKind::quarter,
                      BoundKind::alpha_antisym})
    CHECK(bounds::bound_from_name(bounds::bound_name(k)) == k);
  CHECK_FALSE(bounds::bound_from_name("nope").has_value());
}
