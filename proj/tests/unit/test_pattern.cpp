#include "doctest.h"

#include <random>
#include <set>

#include "lpds/error.hpp"
#include "lpds/pattern.hpp"
#include "oracles.hpp"

using namespace lpds;

namespace {

oracle::Periodic naive(const PeriodicPattern& p) { return {p.basis().u, p.basis().v, p.base()}; }

PeriodicPattern lx(std::vector<bool> bits) { return catalog_lx({std::move(bits)}); }

// Same point set, judged on a box wider than both periods.
bool same_points(const PeriodicPattern& a, const PeriodicPattern& b, std::int64_t r = 40) {
  for (std::int64_t y = -r; y <= r; ++y)
    for (std::int64_t x = -r; x <= r; ++x)
      if (a.contains({x, y}) != b.contains({x, y})) return false;
  return true;
}

PeriodicPattern random_pattern(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-4, 4);
  LatticeBasis b;
  do b = {{c(rng), c(rng)}, {c(rng), c(rng)}};
  while (b.det() == 0 || std::abs(b.det()) > 30);
  const Domain d(b);
  std::vector<Point> base;
  std::bernoulli_distribution take(0.35);
  for (std::size_t i = 0; i < d.cell_count(); ++i)
    if (take(rng)) base.push_back(d.cell(i) + c(rng) * b.u + c(rng) * b.v);
  return PeriodicPattern(b, base);
}

}  // namespace

TEST_CASE("membership in L1") {
  const PeriodicPattern l1 = catalog_l1();
  CHECK(l1.contains({0, 0}));
  CHECK(l1.contains({2, 1}));
  CHECK_FALSE(l1.contains({1, 0}));
  const auto n = naive(l1);
  for (std::int64_t y = -12; y <= 12; ++y)
    for (std::int64_t x = -12; x <= 12; ++x) {
      CHECK(l1.contains({x, y}) == n.contains({x, y}));
      CHECK(l1.contains({x, y}) == l1.contains(Point{x, y} + 3 * l1.basis().u - 2 * l1.basis().v));
    }
}

TEST_CASE("exact densities") {
  CHECK(density(catalog_l1()) == Rational(2, 9));
  CHECK(density(catalog_l2()) == Rational(2, 9));
  CHECK(catalog_l2().size() == 8);
  CHECK(density(PeriodicPattern({{1, 0}, {0, 1}}, {{0, 0}})) == Rational(1));
}

TEST_CASE("window density") {
  const PeriodicPattern l1 = catalog_l1();
  int members = 0;
  for (const Point& p : grid::k_neighborhood({0, 0}, 1)) members += naive(l1).contains(p);
  CHECK(window_density(l1, {0, 0}, 1) == Rational(members, 9));

  const PeriodicPattern full({{1, 0}, {0, 1}}, {{0, 0}});
  CHECK(window_density(full, {7, -2}, 5) == Rational(1));

  const Rational err = window_density(l1, {0, 0}, 100) - Rational(2, 9);
  CHECK(to_double(err < Rational(0) ? -err : err) <= 0.01);
}

TEST_CASE("window density stays within 10/k of the density") {
  for (const auto& p : {catalog_l1(), catalog_l2(), lx({true, false}), lx({true, false, true})}) {
    for (std::int64_t k = 10; k <= 60; k += 5) {
      Rational err = window_density(p, {1, -2}, k) - density(p);
      if (err < Rational(0)) err = -err;
      CHECK(err <= Rational(10, k));
    }
  }
}

TEST_CASE("catalog L_X") {
  const PeriodicPattern empty = lx({false});
  CHECK(same_points(empty, catalog_l2()));
  CHECK(canonicalize(empty) == canonicalize(catalog_l2()));

  const PeriodicPattern evens = lx({true, false});
  CHECK(evens.basis() == LatticeBasis{{18, 0}, {0, 4}});
  CHECK(evens.size() == 16);
  CHECK(density(evens) == Rational(16, 72));

  // Column block k1 of L_X is L_0 shifted by (9 k1, 1_X(k1)).
  const XDescriptor x = XDescriptor::periodic({true, false});
  for (std::int64_t y = -8; y <= 8; ++y)
    for (std::int64_t xx = -30; xx <= 30; ++xx) CHECK(evens.contains({xx, y}) == lx_contains(x, {xx, y}));

  CHECK_THROWS_AS(catalog(CatalogName::LX), Error);
  const auto w = catalog(CatalogName::LX, XDescriptor::finite({0}), WindowBounds{-20, 19, -10, 9});
  REQUIRE(std::holds_alternative<FiniteWindow>(w));
  CHECK(std::get<FiniteWindow>(w).width() == 40);
}

TEST_CASE("canonical forms") {
  const PeriodicPattern l1 = catalog_l1();
  CHECK(canonicalize(canonicalize(l1)) == canonicalize(l1));
  const PeriodicPattern swapped({{-3, 3}, {2, 1}}, {{0, 0}, {-1, 1}});
  CHECK(canonicalize(swapped) == canonicalize(l1));

  // {0 mod 2} and the empty set, both over (18,0),(0,4).
  const PeriodicPattern empty2 = lx({false, false});
  const PeriodicPattern evens = lx({true, false});
  CHECK(empty2.basis() == evens.basis());
  CHECK_FALSE(canonicalize(empty2) == canonicalize(evens));

  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    const PeriodicPattern a = random_pattern(rng);
    const PeriodicPattern c = canonicalize(a);
    CHECK(c == canonicalize(c));
    CHECK(same_points(a, c, 25));
    CHECK(density(c) == density(a));
    const PeriodicPattern moved = translate(a, {3, -5});
    CHECK(density(moved) == density(a));
    CHECK(translation_normal_form(moved) == translation_normal_form(a));
    for (const auto& sub : index2_sublattices(a.basis())) {
      const PeriodicPattern r = refine(a, sub);
      CHECK(density(r) == density(a));
      CHECK(canonicalize(r) == c);
    }
  }
}

TEST_CASE("canonical forms separate different point sets") {
  std::mt19937 rng(11);
  int distinct = 0;
  for (int t = 0; t < 60; ++t) {
    const PeriodicPattern a = random_pattern(rng), b = random_pattern(rng);
    const bool equal_sets = same_points(a, b, 40);
    CHECK((canonicalize(a) == canonicalize(b)) == equal_sets);
    distinct += !equal_sets;
  }
  CHECK(distinct > 0);
}

TEST_CASE("pattern text round trip") {
  const std::string l1_text = "lattice u=(2,1) v=(-3,3)\nbase (0,0) (-1,1)\n";
  CHECK(parse_pattern(l1_text) == catalog_l1());
  for (const auto& p : {catalog_l1(), catalog_l2(), lx({true, false, true})}) {
    const std::string s = serialize(p);
    CHECK(serialize(parse_pattern(s)) == s);
    CHECK(std::get<PeriodicPattern>(parse(s)) == p);
  }
  CHECK(parse_pattern("  lattice   u = ( 2 , 1 )  v=(-3,3)  \n\n base (0,0)   (-1, 1)\n") == catalog_l1());
  CHECK(parse_basis("u=(2,1) v=(-3,3)") == LatticeBasis{{2, 1}, {-3, 3}});
}

TEST_CASE("malformed pattern text") {
  try {
    parse_pattern("lattice u=(1,2) v=(2,4)\nbase (0,0)\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "degenerate lattice");
  }
  CHECK_THROWS_AS(parse_pattern("lattice u=(1,0) v=(0,1)\n"), Error);
  CHECK_THROWS_AS(parse_pattern("lattice u=(2,0) v=(0,1)\nbase (0,0) (2,0)\n"), Error);
  CHECK_THROWS_AS(parse_pattern("lattice u=(2,0) v=(0,1)\nbase (0,0) junk\n"), Error);
  CHECK_THROWS_AS(parse("hello"), Error);
  CHECK_THROWS_AS(parse_bounds("x=[3..1] y=[0..1]"), Error);
}

TEST_CASE("window text round trip") {
  const FiniteWindow w = to_window(catalog_l1(), {-3, 6, -2, 4});
  const std::string s = serialize(w);
  CHECK(s.rfind("window x=[-3..6] y=[-2..4]\n", 0) == 0);
  CHECK(parse_window(s) == w);
  CHECK(serialize(parse_window(s)) == s);
  for (std::int64_t y = -2; y <= 4; ++y)
    for (std::int64_t x = -3; x <= 6; ++x) CHECK(w.contains({x, y}) == catalog_l1().contains({x, y}));
  CHECK_THROWS_AS(parse_window("window x=[0..2] y=[0..1]\nXX.\n"), Error);
  CHECK_THROWS_AS(parse_window("window x=[0..2] y=[0..0]\nXo.\n"), Error);
}

TEST_CASE("X descriptors") {
  const XDescriptor p = parse_x("period=3 bits=101");
  CHECK(p.indicator(0));
  CHECK_FALSE(p.indicator(1));
  CHECK(p.indicator(-1));
  CHECK(p.indicator(5));
  const XDescriptor s = parse_x("set={0, 4,-2}");
  CHECK(s.indicator(4));
  CHECK(s.indicator(-2));
  CHECK_FALSE(s.indicator(1));
  CHECK_THROWS_AS(parse_x("period=0 bits="), Error);
  CHECK_THROWS_AS(parse_x("period=2 bits=101"), Error);
}
