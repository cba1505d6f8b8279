#include "lpds/grid.hpp"

namespace lpds {

std::string to_string(Point p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::ostream& operator<<(std::ostream& os, Point p) { return os << to_string(p); }

namespace grid {

std::array<Point, 8> neighbors(Point p) {
  std::array<Point, 8> out{};
  for (std::size_t i = 0; i < kDirections.size(); ++i) out[i] = p + kDirections[i];
  return out;
}

std::vector<Point> k_neighborhood(Point p, std::int64_t k) {
  std::vector<Point> out;
  if (k < 0) return out;
  out.reserve(static_cast<std::size_t>((2 * k + 1) * (2 * k + 1)));
  for (std::int64_t dy = -k; dy <= k; ++dy)
    for (std::int64_t dx = -k; dx <= k; ++dx) out.push_back({p.x + dx, p.y + dy});
  return out;
}

std::array<DiagonalPair, 4> sqrt2_neighbors(Point p) {
  std::array<DiagonalPair, 4> out{};
  for (std::size_t i = 0; i < kDiagonals.size(); ++i) {
    const Point q = p + kDiagonals[i];
    out[i] = {q, opposite(p, q)};
  }
  return out;
}

}  // namespace grid
}  // namespace lpds
