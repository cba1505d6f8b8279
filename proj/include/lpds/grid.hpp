#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace lpds {

/// A vertex of the king grid, i.e. an element of Z x Z.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(std::int64_t k, Point a) { return {k * a.x, k * a.y}; }
};

std::string to_string(Point p);
std::ostream& operator<<(std::ostream& os, Point p);

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    return std::hash<std::int64_t>{}(p.x * 0x9E3779B97F4A7C15LL ^ (p.y + 0x632BE59BD9B4E019LL));
  }
};

namespace grid {

/// The eight unit steps of the king grid, in a fixed order.
inline constexpr std::array<Point, 8> kDirections = {{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

/// The four diagonal steps, in a fixed order.
inline constexpr std::array<Point, 4> kDiagonals = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

constexpr std::int64_t chebyshev(Point a, Point b) {
  const std::int64_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const std::int64_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx > dy ? dx : dy;
}

/// King adjacency: Euclidean distance at most sqrt(2), distinct points.
constexpr bool adjacent(Point a, Point b) { return chebyshev(a, b) == 1; }

/// Graph distance in the king grid; equal to the Chebyshev distance.
constexpr std::int64_t distance(Point a, Point b) { return chebyshev(a, b); }

std::array<Point, 8> neighbors(Point p);

/// All points within graph distance k of p, row by row from the bottom.
std::vector<Point> k_neighborhood(Point p, std::int64_t k);

/// A diagonal neighbor together with its opposite (distance 2*sqrt(2) apart).
struct DiagonalPair {
  Point neighbor;
  Point opposite;
};

std::array<DiagonalPair, 4> sqrt2_neighbors(Point p);

/// Opposite diagonal neighbor of q with respect to centre p.
constexpr Point opposite(Point p, Point q) { return p + p - q; }

/// The eight symmetries of the grid fixing the origin, as integer matrices
/// acting on column vectors: (x, y) -> (m[0] x + m[1] y, m[2] x + m[3] y).
struct Symmetry {
  std::array<int, 4> m;

  constexpr Point apply(Point p) const {
    return {m[0] * p.x + m[1] * p.y, m[2] * p.x + m[3] * p.y};
  }
  /// Inverse of an orthogonal integer matrix is its transpose.
  constexpr Symmetry inverse() const { return {{m[0], m[2], m[1], m[3]}}; }
};

inline constexpr std::array<Symmetry, 8> kSymmetries = {{
    {{1, 0, 0, 1}}, {{0, -1, 1, 0}}, {{-1, 0, 0, -1}}, {{0, 1, -1, 0}},
    {{-1, 0, 0, 1}}, {{1, 0, 0, -1}}, {{0, 1, 1, 0}}, {{0, -1, -1, 0}}}};

}  // namespace grid
}  // namespace lpds
