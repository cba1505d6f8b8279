#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpds/rational.hpp"
#include "lpds/verify.hpp"

namespace lpds {

enum class Stage { ch0, ch1, ch2, ch3, ch4, ch5 };
enum class Rule { f, g1, g2, g3 };

std::string to_string(Stage s);
std::string to_string(Rule r);

/// Exact charge per residue class (indexed like the pattern's domain cells).
struct ChargeMap {
  Stage stage = Stage::ch0;
  std::vector<Rational> value;

  Rational total() const;
  Rational average() const { return total() / static_cast<std::int64_t>(value.size()); }
  Rational min() const;
  std::size_t argmin() const;
};

struct Transfer {
  Point from;
  Point to;
  Rational amount;
  Rule rule;
};

/// Every transfer made by one pipeline, outgoing from domain representatives.
struct RuleTrace {
  std::vector<Transfer> transfers;
};

enum class DeficientCase { c3_3, c3_4, c3_5_1, c3_5_2 };
std::string to_string(DeficientCase c);

/// A deficient vertex (T3 \ I with ch4 < 1) and the rich friend that pays it.
struct DeficientAssignment {
  Point deficient;
  DeficientCase kase = DeficientCase::c3_3;
  Point rich_friend;
  Rational amount;
  /// Index into grid::kSymmetries of the normalising symmetry.
  int symmetry = 0;
};

/// Local view used to place a deficient vertex into one of the rich-friend
/// cases. Both callbacks take absolute points.
struct LocalView {
  std::function<bool(Point)> in_s;
  std::function<Point(Point)> partner;
};

/// Normalises u0 by the eight grid symmetries onto the configuration with
/// S-neighbours (0,1), (1,-1), (-1,-1) and reads off the sub-case from the
/// partners of the two lower neighbours. Returns nullopt when no rich-friend
/// case applies. Ties resolve to the least (case, friend offset, symmetry).
std::optional<DeficientAssignment> normalize_deficient(Point u0, const LocalView& view);

struct Theorem1Result {
  ChargeMap ch0;
  ChargeMap ch1;
  RuleTrace trace;
  std::vector<std::string> findings;

  bool ok() const { return findings.empty(); }
};

/// ch0 = 14/3 on S1, 9/2 on S2, then f(v, u) = 1/i for u in T_i ∩ N(v).
Theorem1Result charge_thm1(const Classification& classification);

struct Theorem2Result {
  ChargeMap ch2;
  ChargeMap ch3;
  ChargeMap ch4;
  ChargeMap ch5;
  /// r(v) per base residue.
  std::vector<Rational> r;
  RuleTrace trace;
  std::vector<DeficientAssignment> deficient;
  std::vector<std::string> findings;

  bool ok() const { return findings.empty(); }
};

/// ch2 = 9/2 on S1, 5 on S2, followed by g1, g2 and the rich-friend rule g3.
Theorem2Result charge_thm2(const Classification& classification);

/// min((ch3 - 1) / p3, 1/2), and 1/2 when p3 = 0.
Rational r_value(const Rational& ch3, int p3);

struct TheoremInequalities {
  Rational thm1_lhs;
  Rational thm2_lhs;
  bool thm1_satisfied = false;
  bool thm2_satisfied = false;
};

/// 14/3 D1 + 9/2 D2 and 9/2 D1 + 5 D2, each compared with 1.
TheoremInequalities theorem_inequalities(const Rational& d1, const Rational& d2);

struct BoundCalculation {
  /// Weights (normalised so the first is 3) combining the two inequalities
  /// into a bound on D1 + D2.
  Rational weight_thm1;
  Rational weight_thm2;
  /// Common coefficient of D1 and D2 after combination.
  Rational coefficient;
  /// (weight_thm1 + weight_thm2) / coefficient.
  Rational lower_bound;
  /// Single-pair-type bounds: 3/14 when every pair is far, 1/5 when close.
  Rational all_far_bound;
  Rational all_close_bound;
};

BoundCalculation bound_calculator();

struct PositivityThresholds {
  /// D(S1) > 6 (1 - 9/2 D(S)) and D(S2) > 2 (1 - 9/2 D(S)).
  Rational s1;
  Rational s2;
};

PositivityThresholds positivity_thresholds(const Rational& density);

std::string format_charges(const Classification& c, const Theorem1Result& r);
std::string format_charges(const Classification& c, const Theorem2Result& r);

}  // namespace lpds
