#include <array>
#include <set>
#include <tuple>

#include "lpds/discharge.hpp"

namespace lpds {

// Normalised frame: u0 at the origin, S-neighbours v1 = (0,1), v2 = (1,-1),
// v3 = (-1,-1). The partners of v2 and v3 lie in row -2; the three patterns
// that can leave u0 short of charge are
//   3.3  m(v2) = (0,-2), m(v3) = (-1,-2): friend (0,-1) in I(v2) ∩ I(v3), pays 1
//   3.4  m(v2) = (0,-2), m(v3) = (-2,-2): friend v3, pays 1/2
//   3.5  m(v2) = (2,-2), m(v3) = (-2,-2): friend v4 in row -3 under u0, pays 1/2
// The mirror images of 3.3 and 3.4 are reached through the reflection in the
// symmetry loop. In 3.5.1, m(v4) lies in {(-2,-3),(-2,-4),(-1,-4),(0,-4)};
// in 3.5.2, in {(-1,-4),(0,-4),(1,-4)}. Neither fact is needed here.
std::optional<DeficientAssignment> normalize_deficient(Point u0, const LocalView& view) {
  std::set<Point> occupied;
  for (const Point& d : grid::kDirections)
    if (view.in_s(u0 + d)) occupied.insert(d);
  static const std::set<Point> kShape = {{0, 1}, {1, -1}, {-1, -1}};

  using Key = std::tuple<DeficientCase, Point, int>;
  std::optional<Key> best_key;
  std::optional<DeficientAssignment> best;
  for (int k = 0; k < static_cast<int>(grid::kSymmetries.size()); ++k) {
    const grid::Symmetry sigma = grid::kSymmetries[static_cast<std::size_t>(k)];
    std::set<Point> image;
    for (const Point& d : occupied) image.insert(sigma.apply(d));
    if (image != kShape) continue;

    const grid::Symmetry inverse = sigma.inverse();
    const auto to_abs = [&](Point q) { return u0 + inverse.apply(q); };
    const auto to_norm = [&](Point q) { return sigma.apply(q - u0); };
    const Point m2 = to_norm(view.partner(to_abs({1, -1})));
    const Point m3 = to_norm(view.partner(to_abs({-1, -1})));

    DeficientAssignment a;
    a.deficient = u0;
    a.symmetry = k;
    Point friend_norm;
    if (m2 == Point{0, -2} && m3 == Point{-1, -2}) {
      friend_norm = {0, -1};
      if (view.in_s(to_abs(friend_norm))) continue;
      a.kase = DeficientCase::c3_3;
      a.amount = 1;
    } else if (m2 == Point{0, -2} && m3 == Point{-2, -2}) {
      friend_norm = {-1, -1};
      a.kase = DeficientCase::c3_4;
      a.amount = Rational(1, 2);
    } else if (m2 == Point{2, -2} && m3 == Point{-2, -2}) {
      static constexpr std::array<Point, 3> kBelow = {{{-1, -3}, {0, -3}, {1, -3}}};
      bool found = false;
      for (const Point& c : kBelow) {
        if (!view.in_s(to_abs(c))) continue;
        friend_norm = c;
        found = true;
        break;
      }
      if (!found) continue;
      a.kase = friend_norm.x == 0 ? DeficientCase::c3_5_2 : DeficientCase::c3_5_1;
      a.amount = Rational(1, 2);
    } else {
      continue;
    }
    a.rich_friend = to_abs(friend_norm);
    const Key key{a.kase, friend_norm, k};
    if (!best_key || key < *best_key) {
      best_key = key;
      best = a;
    }
  }
  return best;
}

}  // namespace lpds
