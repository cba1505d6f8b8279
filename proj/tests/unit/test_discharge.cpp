#include "doctest.h"

#include <map>
#include <set>

#include "lpds/discharge.hpp"
#include "lpds/verify.hpp"

using namespace lpds;

namespace {

Classification classification_of(const PeriodicPattern& p) {
  const auto report = verify_lpds(p);
  REQUIRE(report.valid());
  return *report.classification;
}

void check_pipelines(const Classification& c) {
  const Theorem1Result t1 = charge_thm1(c);
  CHECK(t1.ok());
  CHECK(t1.ch0.average() == Rational(14, 3) * c.d_s1() + Rational(9, 2) * c.d_s2());
  CHECK(t1.ch1.total() == t1.ch0.total());
  CHECK(t1.ch1.min() >= Rational(1));

  const Theorem2Result t2 = charge_thm2(c);
  CHECK(t2.ok());
  CHECK(t2.ch2.average() == Rational(9, 2) * c.d_s1() + Rational(5) * c.d_s2());
  CHECK(t2.ch3.total() == t2.ch2.total());
  CHECK(t2.ch4.total() == t2.ch2.total());
  CHECK(t2.ch5.total() == t2.ch2.total());
  CHECK(t2.ch5.min() >= Rational(1));
  for (const Rational& r : t2.r) {
    CHECK(r >= Rational(0));
    CHECK(r <= Rational(1, 2));
  }
}

struct Local {
  std::set<Point> s;
  std::map<Point, Point> partner;

  void pair(Point a, Point b) {
    s.insert(a);
    s.insert(b);
    partner[a] = b;
    partner[b] = a;
  }
  Local moved(const grid::Symmetry& g, Point t) const {
    Local out;
    for (const Point& p : s) out.s.insert(g.apply(p) + t);
    for (const auto& [a, b] : partner) out.partner[g.apply(a) + t] = g.apply(b) + t;
    return out;
  }
  LocalView view() const {
    return {[this](Point p) { return s.count(p) > 0; }, [this](Point p) { return partner.at(p); }};
  }
};

void check_case(const Local& frame, DeficientCase kase, Point friend_point, Rational amount) {
  const Point t{5, -7};
  for (const auto& g : grid::kSymmetries) {
    const Local local = frame.moved(g, t);
    const auto a = normalize_deficient(t, local.view());
    REQUIRE(a);
    CHECK(a->kase == kase);
    CHECK(a->deficient == t);
    CHECK(a->rich_friend == g.apply(friend_point) + t);
    CHECK(a->amount == amount);
  }
}

}  // namespace

TEST_CASE("catalog charge pipelines") {
  const Classification l1 = classification_of(catalog_l1());
  const Classification l2 = classification_of(catalog_l2());
  check_pipelines(l1);
  check_pipelines(l2);
  CHECK(charge_thm1(l1).ch0.average() == Rational(28, 27));
  CHECK(charge_thm2(l1).ch2.average() == Rational(1));
  CHECK(charge_thm2(l2).ch2.average() == Rational(19, 18));
  CHECK(charge_thm2(l2).ch5.min() == Rational(1));
}

TEST_CASE("density inequalities") {
  const auto a = theorem_inequalities(Rational(2, 9), Rational(0));
  CHECK(a.thm1_lhs == Rational(28, 27));
  CHECK(a.thm2_lhs == Rational(1));
  CHECK(a.thm1_satisfied);
  CHECK(a.thm2_satisfied);
  CHECK(theorem_inequalities(Rational(0), Rational(1, 5)).thm2_lhs == Rational(1));
  CHECK(theorem_inequalities(Rational(3, 14), Rational(0)).thm1_lhs == Rational(1));
  CHECK_FALSE(theorem_inequalities(Rational(1, 10), Rational(1, 10)).thm1_satisfied);
}

TEST_CASE("combined lower bound") {
  const BoundCalculation b = bound_calculator();
  CHECK(b.lower_bound == Rational(8, 37));
  CHECK(b.all_far_bound == Rational(3, 14));
  CHECK(b.all_close_bound == Rational(1, 5));
  CHECK(b.weight_thm1 == Rational(3));
  // Both inequalities combined give the same coefficient on D1 and D2.
  CHECK(b.weight_thm1 * Rational(14, 3) + b.weight_thm2 * Rational(9, 2) == b.coefficient);
  CHECK(b.weight_thm1 * Rational(9, 2) + b.weight_thm2 * Rational(5) == b.coefficient);
  CHECK((b.weight_thm1 + b.weight_thm2) / b.coefficient == b.lower_bound);
  CHECK(b.lower_bound < Rational(2, 9));
}

TEST_CASE("positivity thresholds") {
  const auto at_two_ninths = positivity_thresholds(Rational(2, 9));
  CHECK(at_two_ninths.s1 == Rational(0));
  CHECK(at_two_ninths.s2 == Rational(0));
  const auto at_bound = positivity_thresholds(Rational(8, 37));
  CHECK(at_bound.s1 == Rational(6, 37));
  CHECK(at_bound.s2 == Rational(2, 37));
}

TEST_CASE("r values") {
  CHECK(r_value(Rational(5), 0) == Rational(1, 2));
  CHECK(r_value(Rational(2), 1) == Rational(1, 2));
  CHECK(r_value(Rational(3, 2), 2) == Rational(1, 4));
  CHECK(r_value(Rational(1), 3) == Rational(0));
  CHECK(r_value(Rational(9, 4), 2) == Rational(1, 2));
}

TEST_CASE("rich friend cases under every symmetry") {
  Local c33;
  c33.pair({0, 1}, {0, 2});
  c33.pair({1, -1}, {0, -2});
  c33.pair({-1, -1}, {-1, -2});
  check_case(c33, DeficientCase::c3_3, {0, -1}, Rational(1));

  Local c34;
  c34.pair({0, 1}, {0, 2});
  c34.pair({1, -1}, {0, -2});
  c34.pair({-1, -1}, {-2, -2});
  check_case(c34, DeficientCase::c3_4, {-1, -1}, Rational(1, 2));

  Local c352;
  c352.pair({0, 1}, {0, 2});
  c352.pair({1, -1}, {2, -2});
  c352.pair({-1, -1}, {-2, -2});
  c352.pair({0, -3}, {0, -4});
  check_case(c352, DeficientCase::c3_5_2, {0, -3}, Rational(1, 2));

  Local c351;
  c351.pair({0, 1}, {0, 2});
  c351.pair({1, -1}, {2, -2});
  c351.pair({-1, -1}, {-2, -2});
  c351.pair({-1, -3}, {-2, -4});
  check_case(c351, DeficientCase::c3_5_1, {-1, -3}, Rational(1, 2));
}

TEST_CASE("no rich friend case") {
  Local other;
  other.pair({0, 1}, {1, 1});
  other.pair({1, -1}, {1, -2});
  const auto a = normalize_deficient({0, 0}, other.view());
  CHECK_FALSE(a);

  // The 3.3 layout with the common neighbour taken into S.
  Local blocked;
  blocked.pair({0, 1}, {0, 2});
  blocked.pair({1, -1}, {0, -2});
  blocked.pair({-1, -1}, {-1, -2});
  blocked.s.insert({0, -1});
  CHECK_FALSE(normalize_deficient({0, 0}, blocked.view()));
}

TEST_CASE("discharging holds on every small LPDS") {
  int patterns = 0;
  for (const LatticeBasis& basis : {LatticeBasis{{3, 0}, {0, 3}}, LatticeBasis{{4, 0}, {0, 3}},
                                    LatticeBasis{{4, 0}, {0, 4}}, LatticeBasis{{4, 0}, {1, 3}},
                                    LatticeBasis{{6, 0}, {2, 2}}, LatticeBasis{{8, 0}, {3, 2}}}) {
    const Domain d(basis);
    const std::size_t n = d.cell_count();
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      std::vector<Point> base;
      for (std::size_t i = 0; i < n; ++i)
        if (s >> i & 1) base.push_back(d.cell(i));
      const PeriodicPattern p(basis, base);
      if (!check_domination(p).holds) continue;
      const auto report = verify_lpds(p);
      if (!report.valid()) continue;
      ++patterns;
      const Classification& c = *report.classification;
      CHECK(theorem_inequalities(c.d_s1(), c.d_s2()).thm1_satisfied);
      CHECK(theorem_inequalities(c.d_s1(), c.d_s2()).thm2_satisfied);
      CHECK(charge_thm1(c).ok());
      CHECK(charge_thm2(c).ok());
    }
  }
  CHECK(patterns > 100);
}
