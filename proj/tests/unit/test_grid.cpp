#include "doctest.h"

#include <algorithm>
#include <set>

#include "lpds/grid.hpp"
#include "oracles.hpp"

using namespace lpds;

namespace {

std::set<Point> as_set(const auto& range) { return {range.begin(), range.end()}; }

}  // namespace

TEST_CASE("neighbors of the origin") {
  const std::set<Point> expected = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  CHECK(as_set(grid::neighbors({0, 0})) == expected);

  std::set<Point> shifted;
  for (const Point& p : expected) shifted.insert(p + Point{5, -3});
  CHECK(as_set(grid::neighbors({5, -3})) == shifted);
}

TEST_CASE("common neighbours of a diagonal and an orthogonal pair") {
  auto common = [](Point p, Point q, bool closed) {
    std::set<Point> a = as_set(grid::neighbors(p)), b = as_set(grid::neighbors(q));
    if (closed) {
      a.insert(p);
      b.insert(q);
    }
    std::vector<Point> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out.size();
  };
  CHECK(common({0, 0}, {1, 1}, false) == 2);
  CHECK(common({0, 0}, {1, 1}, true) == 4);
  CHECK(common({0, 0}, {1, 0}, false) == 4);
}

TEST_CASE("k-neighbourhood sizes") {
  CHECK(grid::k_neighborhood({0, 0}, 0) == std::vector<Point>{{0, 0}});
  CHECK(grid::k_neighborhood({0, 0}, 1).size() == 9);
  CHECK(grid::k_neighborhood({0, 0}, 10).size() == 441);
  for (int k = 0; k <= 6; ++k) CHECK(as_set(grid::k_neighborhood({3, -7}, k)).size() == std::size_t((2 * k + 1) * (2 * k + 1)));
}

TEST_CASE("BFS depth 10 ball equals the Chebyshev ball") {
  const auto dist = oracle::bfs({0, 0}, 12);
  std::set<Point> ball;
  for (int y = -12; y <= 12; ++y)
    for (int x = -12; x <= 12; ++x)
      if (dist[y + 12][x + 12] <= 10) ball.insert({x, y});
  CHECK(ball == as_set(grid::k_neighborhood({0, 0}, 10)));
}

TEST_CASE("graph distance agrees with BFS on a 21x21 window") {
  const int r = 10;
  int mismatches = 0;
  for (int sy = -r; sy <= r; ++sy)
    for (int sx = -r; sx <= r; ++sx) {
      const auto dist = oracle::bfs({sx, sy}, r);
      for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x)
          if (dist[y + r][x + r] != grid::distance({sx, sy}, {x, y})) ++mismatches;
    }
  CHECK(mismatches == 0);
}

TEST_CASE("diagonal neighbours and their opposites") {
  const auto pairs = grid::sqrt2_neighbors({0, 0});
  std::set<Point> diag;
  for (const auto& d : pairs) {
    diag.insert(d.neighbor);
    CHECK(grid::opposite({0, 0}, d.opposite) == d.neighbor);
    CHECK(grid::opposite({0, 0}, grid::opposite({0, 0}, d.neighbor)) == d.neighbor);
  }
  CHECK(diag == std::set<Point>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  for (const auto& d : pairs)
    if (d.neighbor == Point{1, 1}) CHECK(d.opposite == Point{-1, -1});

  for (const Point p : {Point{0, 0}, Point{4, -9}, Point{-2, 3}}) {
    const auto n = as_set(grid::neighbors(p));
    for (const auto& d : grid::sqrt2_neighbors(p)) CHECK(n.count(d.neighbor) == 1);
  }
}

TEST_CASE("adjacency is symmetric and irreflexive") {
  for (int y = -3; y <= 3; ++y)
    for (int x = -3; x <= 3; ++x) {
      const Point p{x, y};
      CHECK_FALSE(grid::adjacent(p, p));
      for (const Point& q : grid::k_neighborhood({0, 0}, 3)) CHECK(grid::adjacent(p, q) == grid::adjacent(q, p));
    }
}

TEST_CASE("the eight symmetries") {
  std::set<std::array<int, 4>> seen;
  for (const auto& s : grid::kSymmetries) {
    seen.insert(s.m);
    for (const Point& p : grid::k_neighborhood({0, 0}, 2)) {
      CHECK(s.inverse().apply(s.apply(p)) == p);
      CHECK(grid::chebyshev(s.apply(p), {0, 0}) == grid::chebyshev(p, {0, 0}));
    }
  }
  CHECK(seen.size() == 8);
}
