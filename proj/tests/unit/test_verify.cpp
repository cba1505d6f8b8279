#include "doctest.h"

#include <functional>
#include <random>

#include "graph_matching.hpp"
#include "lpds/error.hpp"
#include "lpds/verify.hpp"
#include "oracles.hpp"

using namespace lpds;

namespace {

PeriodicPattern random_pattern(std::mt19937& rng, double p, std::int64_t max_det) {
  std::uniform_int_distribution<int> c(-4, 4);
  LatticeBasis b;
  do b = {{c(rng), c(rng)}, {c(rng), c(rng)}};
  while (b.det() == 0 || std::abs(b.det()) > max_det);
  const Domain d(b);
  std::bernoulli_distribution take(p);
  std::vector<Point> base;
  for (std::size_t i = 0; i < d.cell_count(); ++i)
    if (take(rng)) base.push_back(d.cell(i) + c(rng) * b.u);
  return PeriodicPattern(b, base);
}

oracle::Periodic naive(const PeriodicPattern& p) { return {p.basis().u, p.basis().v, p.base()}; }

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

bool naive_covering(std::size_t n, const Edges& edges, const std::vector<bool>& required) {
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    while (i < n && (used[i] || !required[i])) ++i;
    if (i == n) return true;
    for (const auto& [a, b] : edges) {
      const std::size_t other = a == i ? b : b == i ? a : n;
      if (other == n || used[other]) continue;
      used[i] = used[other] = true;
      if (go(i + 1)) return true;
      used[i] = used[other] = false;
    }
    return false;
  };
  return go(0);
}

}  // namespace

TEST_CASE("domination") {
  CHECK(check_domination(catalog_l1()).holds);
  CHECK(check_domination(catalog_l2()).holds);
  const PeriodicPattern pair({{10, 0}, {0, 10}}, {{0, 0}, {1, 0}});
  const Verdict v = check_domination(pair);
  CHECK_FALSE(v.holds);
  REQUIRE_FALSE(v.certificates.empty());
  CHECK(v.certificates.front().kind == ViolationKind::undominated);
  CHECK(v.certificates.front().witnesses == std::vector<Point>{{3, 0}});
  try {
    check_locating(pair);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "requires domination");
  }
}

TEST_CASE("locating") {
  CHECK(check_locating(catalog_l1()).holds);
  CHECK(check_locating(catalog_l2()).holds);
  const PeriodicPattern sparse({{3, 0}, {0, 3}}, {{0, 0}});
  REQUIRE(check_domination(sparse).holds);
  const Verdict v = check_locating(sparse);
  CHECK_FALSE(v.holds);
  const oracle::Periodic n = naive(sparse);
  for (const auto& c : v.certificates) {
    REQUIRE(c.witnesses.size() == 2);
    CHECK(c.kind == ViolationKind::unlocatable_pair);
    CHECK(n.s_neighbours(c.witnesses[0]) == n.s_neighbours(c.witnesses[1]));
    CHECK_FALSE(n.contains(c.witnesses[0]));
  }
}

TEST_CASE("matching of L1") {
  const auto r = find_perfect_matching(catalog_l1());
  REQUIRE(r.matching);
  CHECK_FALSE(r.lifted_basis);
  CHECK(r.matching->partner_of({0, 0}) == Point{-1, 1});
  CHECK(r.matching->partner_of({-1, 1}) == Point{0, 0});
  // Periodic translate of the pair.
  CHECK(r.matching->partner_of(Point{0, 0} + catalog_l1().basis().u) == Point{-1, 1} + catalog_l1().basis().u);
  const Classification c = classify(*r.matching);
  for (const auto& s : c.s_vertices()) CHECK(s.kind == PairKind::far);
}

TEST_CASE("one residue needs an index-2 lift") {
  const PeriodicPattern unit({{1, 0}, {0, 1}}, {{0, 0}});
  CHECK_FALSE(find_perfect_matching(unit, false).matching);
  const auto r = find_perfect_matching(unit);
  REQUIRE(r.matching);
  REQUIRE(r.lifted_basis);
  CHECK(*r.lifted_basis == LatticeBasis{{2, 0}, {0, 1}});
  CHECK(r.matching->partner_of({0, 0}) == Point{1, 0});
  const auto report = verify_lpds(unit);
  CHECK(report.paired);
  CHECK(report.valid());
}

TEST_CASE("L2 pairs") {
  const auto report = verify_lpds(catalog_l2());
  REQUIRE(report.valid());
  const Classification& c = *report.classification;
  CHECK(c.count_s1() == 4);
  CHECK(c.count_s2() == 4);
  CHECK(c.d_s1() == Rational(1, 9));
  CHECK(c.d_s2() == Rational(1, 9));

  // Every perfect matching of the quotient has two close and two far pairs.
  const PeriodicPattern& p = catalog_l2();
  const auto edges = quotient_edges(p);
  const std::size_t n = p.size();
  std::vector<bool> used(n, false);
  int matchings = 0;
  std::vector<int> close_counts;
  std::function<void(int)> go = [&](int close) {
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      ++matchings;
      close_counts.push_back(close);
      return;
    }
    for (const auto& e : edges) {
      if (e.a != i || used[e.b]) continue;
      const Point d = p.base()[e.b] + e.offset - p.base()[e.a];
      used[i] = used[e.b] = true;
      go(close + (d.x == 0 || d.y == 0));
      used[i] = used[e.b] = false;
    }
  };
  go(0);
  CHECK(matchings > 0);
  for (int k : close_counts) CHECK(k == 2);
}

TEST_CASE("classification of the catalog") {
  for (const auto& p : {catalog_l1(), catalog_l2()}) {
    const auto report = verify_lpds(p);
    REQUIRE(report.valid());
    const Classification& c = *report.classification;
    CHECK(c.d_s1() + c.d_s2() == Rational(2, 9));
    CHECK(c.count_t3_not_interval() == 0);
    for (const auto& s : c.s_vertices()) {
      CHECK(s.pendant.size() + s.interval.size() + 1 == 8);
      CHECK(s.interval.size() == (s.kind == PairKind::far ? 2u : 4u));
    }
    for (const auto& o : c.others()) CHECK(o.s_neighbors >= 1);
  }
  const auto l1 = verify_lpds(catalog_l1());
  CHECK(l1.classification->d_s1() == Rational(2, 9));
  CHECK(l1.classification->d_s2() == Rational(0));
}

TEST_CASE("random patterns agree with the reference") {
  std::mt19937 rng(2024);
  int valid = 0;
  for (int t = 0; t < 400; ++t) {
    const double density = std::uniform_real_distribution<double>(0.15, 0.6)(rng);
    const PeriodicPattern p = random_pattern(rng, density, 24);
    const oracle::Lpds ref = oracle::lpds(naive(p));
    CHECK(check_domination(p).holds == ref.dominating);
    if (ref.dominating) CHECK(check_locating(p).holds == ref.locating);
    CHECK(find_perfect_matching(p, false).matching.has_value() == ref.paired);
    const auto report = verify_lpds(p, {.allow_lift = false});
    CHECK(report.valid() == ref.valid());
    valid += ref.valid();
  }
  CHECK(valid > 0);
}

TEST_CASE("Edmonds matching against exhaustion") {
  std::mt19937 rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    std::bernoulli_distribution edge(std::uniform_real_distribution<double>(0.1, 0.6)(rng));
    Edges edges;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (edge(rng)) {
          edges.emplace_back(i, j);
          adj[i][j] = adj[j][i] = true;
        }
    const auto mate = detail::maximum_matching(n, edges);
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mate[i] != detail::kUnmatched) {
        CHECK(mate[mate[i]] == i);
        CHECK(adj[i][mate[i]]);
        ++size;
      }
    CHECK(size / 2 == oracle::max_matching(n, adj));

    std::vector<bool> required(n);
    for (std::size_t i = 0; i < n; ++i) required[i] = std::bernoulli_distribution(0.6)(rng);
    CHECK(detail::has_covering_matching(n, edges, required) == naive_covering(n, edges, required));
  }
}

TEST_CASE("window verification") {
  const auto lx = catalog(CatalogName::LX, XDescriptor::finite({0}), WindowBounds{-20, 19, -10, 9});
  const WindowReport clean = verify_window(std::get<FiniteWindow>(lx));
  CHECK(clean.dominating);
  CHECK(clean.locating);
  CHECK(clean.pairing == PairingStatus::paired);
  CHECK(clean.violations.empty());

  const WindowReport empty = verify_window(FiniteWindow(0, 4, 0, 4));
  CHECK_FALSE(empty.dominating);
  CHECK(empty.interior_cells == 9);
  CHECK(empty.violations.size() == 9);

  const WindowReport l1 = verify_window(to_window(catalog_l1(), {-6, 7, -5, 8}));
  CHECK(l1.dominating);
  CHECK(l1.locating);
  CHECK(l1.pairing == PairingStatus::paired);

  CHECK_THROWS_AS(verify_window(FiniteWindow(0, 3, 0, 9)), Error);
}

TEST_CASE("random windows agree with the reference") {
  std::mt19937 rng(99);
  for (int t = 0; t < 300; ++t) {
    FiniteWindow w(0, 7, 0, 7);
    std::bernoulli_distribution take(std::uniform_real_distribution<double>(0.1, 0.7)(rng));
    for (std::int64_t y = 0; y < 8; ++y)
      for (std::int64_t x = 0; x < 8; ++x) w.set({x, y}, take(rng));
    const auto in_s = [&](Point p) { return w.contains(p); };
    bool dominating = true;
    for (std::int64_t y = 1; y < 7; ++y)
      for (std::int64_t x = 1; x < 7; ++x) {
        bool hit = in_s({x, y});
        for (const Point& q : oracle::ring({x, y})) hit = hit || in_s(q);
        dominating = dominating && hit;
      }
    const WindowReport r = verify_window(w);
    CHECK(r.dominating == dominating);
    CHECK(r.locating == !oracle::window_unlocatable(0, 7, 0, 7, in_s));
  }
}

TEST_CASE("machine-readable lines") {
  const std::string text = machine_lines(verify_lpds(catalog_l1()));
  CHECK(text == "verdict dominated=true locating=true paired=true density=2/9 DS1=2/9 DS2=0/1\n");
  const PeriodicPattern pair({{10, 0}, {0, 10}}, {{0, 0}, {1, 0}});
  const std::string bad = machine_lines(verify_lpds(pair));
  CHECK(bad.rfind("verdict dominated=false", 0) == 0);
  CHECK(bad.find("\ncertificate undominated (3,0)") != std::string::npos);
}
