#include "lpds/discharge.hpp"

#include <algorithm>
#include <sstream>

#include "lpds/error.hpp"

namespace lpds {
namespace {

enum class Relation { partner, interval, pendant };

// Periodic lookups shared by the discharge rules.
class Context {
 public:
  explicit Context(const Classification& c)
      : c_(c), pattern_(c.pattern()), domain_(pattern_.domain()), matching_(c.matching()) {}

  const Domain& domain() const { return domain_; }
  const Classification& classification() const { return c_; }
  bool in_s(Point q) const { return pattern_.contains(q); }
  bool in_interval(Point q) const { return c_.in_interval(q); }
  Tier tier(Point q) const { return c_.other_at(q)->tier; }
  Point partner(Point v) const { return matching_.partner_of(v); }
  std::size_t residue(Point v) const { return *pattern_.residue(v); }

  Relation relation(Point v, Point u) const {
    const Point mv = partner(v);
    if (u == mv) return Relation::partner;
    return grid::adjacent(u, mv) ? Relation::interval : Relation::pendant;
  }

  /// Pendant neighbour outside S and outside I, with its tier.
  std::optional<Tier> plain_pendant_tier(Point v, Point u) const {
    if (in_s(u) || relation(v, u) != Relation::pendant || in_interval(u)) return std::nullopt;
    return tier(u);
  }

 private:
  const Classification& c_;
  const PeriodicPattern& pattern_;
  const Domain& domain_;
  const Matching& matching_;
};

using Amount = std::function<Rational(Point from, Point to)>;

// One discharge step: every cell gains what its neighbours send it and pays
// what it sends them. Incoming amounts are evaluated from the sender's side,
// so the conservation check compares two independent sums.
ChargeMap apply_rule(const Context& ctx, const ChargeMap& before, Stage next, Rule rule,
                     const Amount& amount, RuleTrace& trace, std::vector<std::string>& findings) {
  const Domain& d = ctx.domain();
  ChargeMap after{next, std::vector<Rational>(d.cell_count())};
  Rational total_in = 0, total_out = 0;
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point x = d.cell(i);
    Rational gained = 0, paid = 0;
    for (const Point& y : grid::neighbors(x)) {
      gained += amount(y, x);
      const Rational out = amount(x, y);
      if (out == Rational(0)) continue;
      if (out < 0) findings.push_back("negative transfer " + to_string(rule) + " " + to_string(x));
      paid += out;
      trace.transfers.push_back({x, y, out, rule});
    }
    after.value[i] = before.value[i] + gained - paid;
    total_in += gained;
    total_out += paid;
  }
  if (total_in != total_out || after.total() != before.total())
    findings.push_back("charge not conserved by rule " + to_string(rule) + ": in " + to_string(total_in) +
                       ", out " + to_string(total_out));
  return after;
}

std::string class_label(const Classification& c, Point p) {
  if (const auto* s = c.s_at(p)) return s->kind == PairKind::far ? "S1" : "S2";
  const auto* u = c.other_at(p);
  std::string label = "T" + std::to_string(static_cast<int>(u->tier));
  if (u->in_interval) label += "/I";
  return label;
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 1, ' ');
}

}  // namespace

std::string to_string(Stage s) { return "ch" + std::to_string(static_cast<int>(s)); }

std::string to_string(Rule r) {
  switch (r) {
    case Rule::f:
      return "f";
    case Rule::g1:
      return "g1";
    case Rule::g2:
      return "g2";
    case Rule::g3:
      return "g3";
  }
  return "?";
}

std::string to_string(DeficientCase c) {
  switch (c) {
    case DeficientCase::c3_3:
      return "3.3";
    case DeficientCase::c3_4:
      return "3.4";
    case DeficientCase::c3_5_1:
      return "3.5.1";
    case DeficientCase::c3_5_2:
      return "3.5.2";
  }
  return "?";
}

Rational ChargeMap::total() const {
  Rational sum = 0;
  for (const auto& q : value) sum += q;
  return sum;
}

Rational ChargeMap::min() const { return value.empty() ? Rational(0) : value[argmin()]; }

std::size_t ChargeMap::argmin() const {
  return static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
}

Rational r_value(const Rational& ch3, int p3) {
  const Rational half(1, 2);
  if (p3 == 0) return half;
  return std::min((ch3 - 1) / p3, half);
}

// Density pipeline with ch0 and f ----------------------------------------------

Theorem1Result charge_thm1(const Classification& c) {
  const Context ctx(c);
  const Domain& d = ctx.domain();
  Theorem1Result out;
  out.ch0 = {Stage::ch0, std::vector<Rational>(d.cell_count(), 0)};
  for (const auto& v : c.s_vertices())
    out.ch0.value[d.index(v.point)] = v.kind == PairKind::far ? Rational(14, 3) : Rational(9, 2);

  const Amount f = [&](Point v, Point u) -> Rational {
    if (!ctx.in_s(v) || ctx.in_s(u)) return 0;
    return Rational(1, static_cast<int>(ctx.tier(u)));
  };
  out.ch1 = apply_rule(ctx, out.ch0, Stage::ch1, Rule::f, f, out.trace, out.findings);

  const Rational expected = Rational(14, 3) * c.d_s1() + Rational(9, 2) * c.d_s2();
  if (out.ch0.average() != expected)
    out.findings.push_back("average ch0 " + to_string(out.ch0.average()) + " differs from " + to_string(expected));
  for (std::size_t i = 0; i < d.cell_count(); ++i)
    if (out.ch1.value[i] < 1)
      out.findings.push_back("ch1" + to_string(d.cell(i)) + " = " + to_string(out.ch1.value[i]) + " < 1");
  return out;
}

// Density pipeline with ch2, g1, g2 and g3 --------------------------------------

Theorem2Result charge_thm2(const Classification& c) {
  const Context ctx(c);
  const Domain& d = ctx.domain();
  const Rational half(1, 2);
  Theorem2Result out;
  out.ch2 = {Stage::ch2, std::vector<Rational>(d.cell_count(), 0)};
  for (const auto& v : c.s_vertices())
    out.ch2.value[d.index(v.point)] = v.kind == PairKind::far ? Rational(9, 2) : Rational(5);

  const Amount g1 = [&](Point v, Point u) -> Rational {
    if (!ctx.in_s(v) || ctx.in_s(u)) return 0;
    if (ctx.relation(v, u) == Relation::interval) return half;
    const auto tier = ctx.plain_pendant_tier(v, u);
    if (tier == Tier::t1) return 1;
    if (tier == Tier::t2) return half;
    return 0;
  };
  out.ch3 = apply_rule(ctx, out.ch2, Stage::ch3, Rule::g1, g1, out.trace, out.findings);

  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point x = d.cell(i);
    const auto* u = c.other_at(x);
    const bool covered = !u || u->in_interval || u->tier != Tier::t3;
    if (covered && out.ch3.value[i] < 1)
      out.findings.push_back("ch3" + to_string(x) + " = " + to_string(out.ch3.value[i]) + " < 1 on S∪I∪T1∪T2");
  }

  out.r.reserve(c.s_vertices().size());
  for (const auto& v : c.s_vertices()) out.r.push_back(r_value(out.ch3.value[d.index(v.point)], v.p3));

  const Amount g2 = [&](Point v, Point u) -> Rational {
    if (!ctx.in_s(v)) return 0;
    if (ctx.plain_pendant_tier(v, u) != Tier::t3) return 0;
    return out.r[ctx.residue(v)];
  };
  out.ch4 = apply_rule(ctx, out.ch3, Stage::ch4, Rule::g2, g2, out.trace, out.findings);

  const LocalView view{[&](Point q) { return ctx.in_s(q); }, [&](Point q) { return ctx.partner(q); }};
  out.ch5 = out.ch4;
  out.ch5.stage = Stage::ch5;
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point x = d.cell(i);
    if (ctx.in_s(x)) {
      if (out.ch4.value[i] < 1)
        out.findings.push_back("ch4" + to_string(x) + " = " + to_string(out.ch4.value[i]) + " < 1 on S");
      continue;
    }
    if (out.ch4.value[i] >= 1) continue;
    const auto* u = c.other_at(x);
    if (u->tier != Tier::t3 || u->in_interval) {
      out.findings.push_back("ch4" + to_string(x) + " < 1 outside T3 \\ I");
      continue;
    }
    auto assignment = normalize_deficient(x, view);
    if (!assignment) {
      out.findings.push_back("unclassifiable deficient vertex " + to_string(x) + " with ch4 = " +
                             to_string(out.ch4.value[i]));
      continue;
    }
    out.ch5.value[i] += assignment->amount;
    out.ch5.value[d.index(assignment->rich_friend)] -= assignment->amount;
    out.trace.transfers.push_back({assignment->rich_friend, x, assignment->amount, Rule::g3});
    out.deficient.push_back(*assignment);
  }
  if (out.ch5.total() != out.ch4.total()) out.findings.push_back("charge not conserved by rule g3");

  const Rational expected = Rational(9, 2) * c.d_s1() + 5 * c.d_s2();
  if (out.ch2.average() != expected)
    out.findings.push_back("average ch2 " + to_string(out.ch2.average()) + " differs from " + to_string(expected));
  for (std::size_t i = 0; i < d.cell_count(); ++i)
    if (out.ch5.value[i] < 1)
      out.findings.push_back("ch5" + to_string(d.cell(i)) + " = " + to_string(out.ch5.value[i]) + " < 1");
  return out;
}

// Arithmetic ----------------------------------------------------------------------

TheoremInequalities theorem_inequalities(const Rational& d1, const Rational& d2) {
  if (d1 < 0 || d2 < 0) throw Error("densities must be non-negative");
  TheoremInequalities t;
  t.thm1_lhs = Rational(14, 3) * d1 + Rational(9, 2) * d2;
  t.thm2_lhs = Rational(9, 2) * d1 + 5 * d2;
  t.thm1_satisfied = t.thm1_lhs >= 1;
  t.thm2_satisfied = t.thm2_lhs >= 1;
  return t;
}

BoundCalculation bound_calculator() {
  // a1 D1 + a2 D2 >= 1 and b1 D1 + b2 D2 >= 1; weights x, y with
  // x a1 + y b1 = x a2 + y b2 make the left side a multiple of D1 + D2.
  const Rational a1(14, 3), a2(9, 2), b1(9, 2), b2(5);
  const Rational x = b2 - b1;
  const Rational y = a1 - a2;
  BoundCalculation out;
  out.weight_thm1 = 3;
  out.weight_thm2 = out.weight_thm1 * y / x;
  out.coefficient = out.weight_thm1 * a1 + out.weight_thm2 * b1;
  out.lower_bound = (out.weight_thm1 + out.weight_thm2) / out.coefficient;
  out.all_far_bound = 1 / a1;
  out.all_close_bound = 1 / b2;
  return out;
}

PositivityThresholds positivity_thresholds(const Rational& density) {
  const Rational slack = 1 - Rational(9, 2) * density;
  // 1 <= 9/2 D + 1/6 D1 and 1 <= 9/2 D + 1/2 D2.
  return {slack / Rational(1, 6), slack / Rational(1, 2)};
}

// Formatting ------------------------------------------------------------------

std::string format_charges(const Classification& c, const Theorem1Result& r) {
  std::ostringstream out;
  const Domain& d = c.pattern().domain();
  out << pad("cell", 12) << pad("class", 7) << pad("ch0", 9) << "ch1\n";
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point p = d.cell(i);
    out << pad(to_string(p), 12) << pad(class_label(c, p), 7) << pad(to_string(r.ch0.value[i]), 9)
        << to_string(r.ch1.value[i]) << '\n';
  }
  out << "min ch1=" << to_string(r.ch1.min()) << " at " << to_string(d.cell(r.ch1.argmin())) << '\n';
  out << "average ch0=" << to_string(r.ch0.average()) << " ch1=" << to_string(r.ch1.average()) << '\n';
  for (const auto& f : r.findings) out << "finding " << f << '\n';
  return out.str();
}

std::string format_charges(const Classification& c, const Theorem2Result& r) {
  std::ostringstream out;
  const Domain& d = c.pattern().domain();
  out << pad("cell", 12) << pad("class", 7) << pad("ch2", 9) << pad("ch3", 9) << pad("ch4", 9) << "ch5\n";
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point p = d.cell(i);
    out << pad(to_string(p), 12) << pad(class_label(c, p), 7) << pad(to_string(r.ch2.value[i]), 9)
        << pad(to_string(r.ch3.value[i]), 9) << pad(to_string(r.ch4.value[i]), 9) << to_string(r.ch5.value[i])
        << '\n';
  }
  out << "min ch5=" << to_string(r.ch5.min()) << " at " << to_string(d.cell(r.ch5.argmin())) << '\n';
  out << "average ch2=" << to_string(r.ch2.average()) << " ch5=" << to_string(r.ch5.average()) << '\n';
  out << "deficient " << r.deficient.size() << '\n';
  for (const auto& a : r.deficient)
    out << "deficient " << a.deficient << " case " << to_string(a.kase) << " rich-friend " << a.rich_friend
        << " amount " << to_string(a.amount) << '\n';
  for (const auto& f : r.findings) out << "finding " << f << '\n';
  return out.str();
}

}  // namespace lpds
