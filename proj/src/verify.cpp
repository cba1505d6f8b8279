#include "lpds/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "graph_matching.hpp"
#include "lpds/error.hpp"

namespace lpds {
namespace {

// S-neighbours of p as absolute points, in direction order.
std::vector<Point> s_neighbourhood(const PeriodicPattern& pattern, Point p) {
  std::vector<Point> out;
  for (const Point& q : grid::neighbors(p))
    if (pattern.contains(q)) out.push_back(q);
  return out;
}

std::vector<Point> s_neighbourhood(const FiniteWindow& window, Point p) {
  std::vector<Point> out;
  for (const Point& q : grid::neighbors(p))
    if (window.contains(q)) out.push_back(q);
  return out;
}

std::string bool_word(bool b) { return b ? "true" : "false"; }

// Offsets are ranked by squared length, then lexicographically.
std::tuple<std::int64_t, std::int64_t, std::int64_t> offset_order(Point p) {
  return {p.x * p.x + p.y * p.y, p.x, p.y};
}

}  // namespace

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::undominated:
      return "undominated";
    case ViolationKind::unlocatable_pair:
      return "unlocatable-pair";
    case ViolationKind::unpairable:
      return "unpairable";
  }
  return "unknown";
}

// Matching ------------------------------------------------------------------

Matching::Matching(PeriodicPattern pattern, std::vector<Partner> partners)
    : pattern_(std::move(pattern)), partners_(std::move(partners)) {
  const auto& base = pattern_.base();
  if (partners_.size() != base.size()) throw Error("matching size differs from base size");
  for (std::size_t r = 0; r < base.size(); ++r) {
    const Partner& m = partners_[r];
    if (m.residue >= base.size() || m.residue == r) throw Error("matching is not fixed-point free");
    const Partner& back = partners_[m.residue];
    if (back.residue != r || back.offset != -m.offset) throw Error("matching is not an involution");
    if (!grid::adjacent(base[r], partner_point(r))) throw Error("matched pair is not adjacent");
  }
}

Point Matching::partner_point(std::size_t residue) const {
  const Partner& m = partners_[residue];
  return pattern_.base()[m.residue] + m.offset;
}

Point Matching::partner_of(Point p) const {
  const auto r = pattern_.residue(p);
  if (!r) throw Error("point " + to_string(p) + " is not in the pattern");
  return partner_point(*r) + (p - pattern_.base()[*r]);
}

// Domination and locating ---------------------------------------------------

Verdict check_domination(const PeriodicPattern& pattern) {
  Verdict v;
  const Domain& d = pattern.domain();
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point c = d.cell(i);
    if (pattern.contains(c) || !s_neighbourhood(pattern, c).empty()) continue;
    v.holds = false;
    v.certificates.push_back({ViolationKind::undominated, {c}, "N[v] has no member"});
  }
  return v;
}

Verdict check_locating(const PeriodicPattern& pattern) {
  if (!check_domination(pattern).holds) throw Error("requires domination");
  Verdict v;
  const Domain& d = pattern.domain();
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point u = d.cell(i);
    if (pattern.contains(u)) continue;
    const auto nu = s_neighbourhood(pattern, u);
    for (std::int64_t dy = -2; dy <= 2; ++dy) {
      for (std::int64_t dx = -2; dx <= 2; ++dx) {
        const Point w = u + Point{dx, dy};
        if (w == u || pattern.contains(w)) continue;
        // Report each unordered pair once: from the smaller cell index, or
        // from the positive offset when both ends share a residue.
        const std::size_t j = d.index(w);
        if (j < i || (j == i && Point{dx, dy} < Point{0, 0})) continue;
        if (s_neighbourhood(pattern, w) != nu) continue;
        v.holds = false;
        v.certificates.push_back({ViolationKind::unlocatable_pair, {u, w}, "N(u) ∩ S = N(w) ∩ S"});
      }
    }
  }
  return v;
}

// Matching ------------------------------------------------------------------

std::vector<QuotientEdge> quotient_edges(const PeriodicPattern& pattern) {
  const auto& base = pattern.base();
  std::map<std::pair<std::size_t, std::size_t>, Point> least;
  for (std::size_t a = 0; a < base.size(); ++a) {
    for (const Point& q : grid::neighbors(base[a])) {
      const auto b = pattern.residue(q);
      if (!b || *b <= a) continue;  // loops and the mirrored direction
      const Point offset = q - base[*b];
      auto [it, inserted] = least.try_emplace({a, *b}, offset);
      if (!inserted && offset_order(offset) < offset_order(it->second)) it->second = offset;
    }
  }
  std::vector<QuotientEdge> edges;
  edges.reserve(least.size());
  for (const auto& [key, offset] : least) edges.push_back({key.first, key.second, offset});
  return edges;
}

namespace {

struct QuotientAttempt {
  std::optional<Matching> matching;
  std::vector<std::size_t> unmatched;
};

QuotientAttempt match_quotient(const PeriodicPattern& pattern) {
  const auto edges = quotient_edges(pattern);
  std::vector<std::pair<std::size_t, std::size_t>> plain;
  plain.reserve(edges.size());
  for (const auto& e : edges) plain.emplace_back(e.a, e.b);
  const auto mate = detail::maximum_matching(pattern.size(), plain);

  QuotientAttempt out;
  for (std::size_t v = 0; v < mate.size(); ++v)
    if (mate[v] == detail::kUnmatched) out.unmatched.push_back(v);
  if (!out.unmatched.empty()) return out;

  std::vector<Partner> partners(pattern.size());
  for (const auto& e : edges) {
    if (mate[e.a] != e.b) continue;
    partners[e.a] = {e.b, e.offset};
    partners[e.b] = {e.a, -e.offset};
  }
  out.matching.emplace(pattern, std::move(partners));
  return out;
}

}  // namespace

MatchingResult find_perfect_matching(const PeriodicPattern& pattern, bool allow_lift) {
  MatchingResult result;
  QuotientAttempt first = match_quotient(pattern);
  if (first.matching) {
    result.matching = std::move(first.matching);
    return result;
  }
  if (allow_lift) {
    for (const LatticeBasis& sub : index2_sublattices(pattern.basis())) {
      QuotientAttempt lifted = match_quotient(refine(pattern, sub));
      if (lifted.matching) {
        result.matching = std::move(lifted.matching);
        result.lifted_basis = sub;
        return result;
      }
    }
  }
  ViolationCertificate c{ViolationKind::unpairable, {}, ""};
  for (std::size_t r : first.unmatched) c.witnesses.push_back(pattern.base()[r]);
  std::ostringstream detail;
  if (pattern.size() % 2 == 1) detail << "odd residue count " << pattern.size() << "; ";
  detail << "maximum quotient matching leaves " << first.unmatched.size() << " residue(s) unmatched";
  detail << (allow_lift ? "; no perfect matching at period or index-2 refinements"
                        : "; no perfect matching at period");
  c.detail = detail.str();
  result.obstruction = std::move(c);
  return result;
}

// Classification ------------------------------------------------------------

Classification::Classification(Matching matching, std::vector<SVertexClass> s,
                               std::vector<OtherClass> others, std::vector<std::int64_t> slot)
    : matching_(std::move(matching)), s_(std::move(s)), others_(std::move(others)), slot_(std::move(slot)) {
  const Domain& d = pattern().domain();
  interval_.assign(d.cell_count(), false);
  for (const auto& v : s_) {
    for (const Point& q : v.interval) interval_[d.index(q)] = true;
  }
  interval_count_ = std::count(interval_.begin(), interval_.end(), true);
}

const SVertexClass* Classification::s_at(Point p) const {
  const std::int64_t k = slot_[pattern().domain().index(p)];
  return k >= 0 ? &s_[static_cast<std::size_t>(k)] : nullptr;
}

const OtherClass* Classification::other_at(Point p) const {
  const std::int64_t k = slot_[pattern().domain().index(p)];
  return k < 0 ? &others_[static_cast<std::size_t>(-k - 1)] : nullptr;
}

bool Classification::in_interval(Point p) const { return interval_[pattern().domain().index(p)]; }

std::int64_t Classification::count_s1() const {
  return std::count_if(s_.begin(), s_.end(), [](const auto& v) { return v.kind == PairKind::far; });
}

std::int64_t Classification::count_s2() const {
  return std::count_if(s_.begin(), s_.end(), [](const auto& v) { return v.kind == PairKind::close; });
}

std::int64_t Classification::count_tier(Tier t) const {
  return std::count_if(others_.begin(), others_.end(), [t](const auto& u) { return u.tier == t; });
}

std::int64_t Classification::count_t3_not_interval() const {
  return std::count_if(others_.begin(), others_.end(),
                       [](const auto& u) { return u.tier == Tier::t3 && !u.in_interval; });
}

Classification classify(const Matching& matching) {
  const PeriodicPattern& pattern = matching.pattern();
  const Domain& d = pattern.domain();

  // A point lies in I iff it is adjacent to some member and to that member's partner.
  auto in_interval = [&](Point c) {
    for (const Point& w : grid::neighbors(c)) {
      if (pattern.contains(w) && grid::adjacent(c, matching.partner_of(w))) return true;
    }
    return false;
  };

  std::vector<std::int64_t> slot(d.cell_count(), 0);
  std::vector<OtherClass> others;
  std::vector<bool> interval(d.cell_count(), false);
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point c = d.cell(i);
    interval[i] = in_interval(c);
    if (pattern.contains(c)) continue;
    OtherClass u;
    u.point = c;
    u.s_neighbors = static_cast<int>(s_neighbourhood(pattern, c).size());
    if (u.s_neighbors == 0) throw Error("classification requires a dominating set");
    u.tier = u.s_neighbors >= 3 ? Tier::t3 : static_cast<Tier>(u.s_neighbors);
    u.in_interval = interval[i];
    slot[i] = -static_cast<std::int64_t>(others.size()) - 1;
    others.push_back(u);
  }

  std::vector<SVertexClass> s;
  s.reserve(pattern.size());
  for (std::size_t r = 0; r < pattern.size(); ++r) {
    SVertexClass v;
    v.point = pattern.base()[r];
    v.partner = matching.partner_point(r);
    v.kind = (v.point.x != v.partner.x && v.point.y != v.partner.y) ? PairKind::far : PairKind::close;
    for (const Point& q : grid::neighbors(v.point)) {
      if (q == v.partner) continue;
      if (grid::adjacent(q, v.partner)) {
        v.interval.push_back(q);
        if (pattern.contains(q)) ++v.i0;
        continue;
      }
      v.pendant.push_back(q);
      if (pattern.contains(q) || interval[d.index(q)]) {
        ++v.p0;
        continue;
      }
      const auto n = s_neighbourhood(pattern, q).size();
      if (n == 1) ++v.p1;
      else if (n == 2) ++v.p2;
      else ++v.p3;
    }
    slot[d.index(v.point)] = static_cast<std::int64_t>(r);
    s.push_back(std::move(v));
  }
  return Classification(matching, std::move(s), std::move(others), std::move(slot));
}

// Composition ---------------------------------------------------------------

VerificationReport verify_lpds(const PeriodicPattern& pattern, const VerifyOptions& options) {
  VerificationReport report;
  report.density = density(pattern);

  Verdict dom = check_domination(pattern);
  report.dominating = dom.holds;
  for (auto& c : dom.certificates) report.violations.push_back(std::move(c));

  if (report.dominating) {
    Verdict loc = check_locating(pattern);
    report.locating = loc.holds;
    for (auto& c : loc.certificates) report.violations.push_back(std::move(c));
  }

  MatchingResult m = find_perfect_matching(pattern, options.allow_lift);
  report.paired = m.matching.has_value();
  report.lifted_basis = m.lifted_basis;
  if (m.obstruction) report.violations.push_back(std::move(*m.obstruction));
  if (m.matching) {
    report.matching = std::move(m.matching);
    if (report.dominating) report.classification = classify(*report.matching);
  }
  return report;
}

std::string format_certificate(const ViolationCertificate& c) {
  std::ostringstream out;
  out << "certificate " << to_string(c.kind);
  for (const Point& p : c.witnesses) out << ' ' << p;
  if (!c.detail.empty()) out << " # " << c.detail;
  return out.str();
}

std::string machine_lines(const VerificationReport& r) {
  std::ostringstream out;
  out << "verdict dominated=" << bool_word(r.dominating) << " locating=" << bool_word(r.locating)
      << " paired=" << bool_word(r.paired) << " density=" << to_string(r.density);
  if (r.classification) {
    out << " DS1=" << to_string(r.classification->d_s1()) << " DS2=" << to_string(r.classification->d_s2());
  } else {
    out << " DS1=- DS2=-";
  }
  out << '\n';
  for (const auto& c : r.violations) out << format_certificate(c) << '\n';
  return out.str();
}

std::string format_report(const VerificationReport& r) {
  std::ostringstream out;
  out << (r.valid() ? "valid LPDS" : "not an LPDS") << '\n';
  out << "  density          " << to_string(r.density) << '\n';
  out << "  dominating       " << bool_word(r.dominating) << '\n';
  out << "  locating         " << bool_word(r.locating) << (r.dominating ? "" : " (requires domination)") << '\n';
  out << "  paired           " << bool_word(r.paired) << '\n';
  if (r.lifted_basis)
    out << "  matched at       u=" << r.lifted_basis->u << " v=" << r.lifted_basis->v << " (index 2)\n";
  if (r.matching) {
    const auto& base = r.matching->pattern().base();
    out << "  matching        ";
    for (std::size_t i = 0; i < base.size(); ++i)
      if (i < r.matching->partners()[i].residue)
        out << ' ' << base[i] << "-" << r.matching->partner_point(i);
    out << '\n';
  }
  if (const auto& c = r.classification) {
    out << "  S1 / S2          " << c->count_s1() << " / " << c->count_s2() << " of " << c->cells()
        << " cells\n";
    out << "  T1 / T2 / T3     " << c->count_tier(Tier::t1) << " / " << c->count_tier(Tier::t2) << " / "
        << c->count_tier(Tier::t3) << '\n';
    out << "  I, T3 \\ I        " << c->count_interval() << ", " << c->count_t3_not_interval() << '\n';
  }
  out << machine_lines(r);
  return out.str();
}

// Windows -------------------------------------------------------------------

WindowReport verify_window(const FiniteWindow& w) {
  if (w.width() < 5 || w.height() < 5) throw Error("window too small (needs at least 5 x 5)");
  WindowReport report;

  for (std::int64_t y = w.y0() + 1; y < w.y1(); ++y) {
    for (std::int64_t x = w.x0() + 1; x < w.x1(); ++x) {
      const Point u{x, y};
      ++report.interior_cells;
      if (w.contains(u)) continue;
      const auto nu = s_neighbourhood(w, u);
      if (nu.empty()) {
        report.dominating = false;
        report.violations.push_back({ViolationKind::undominated, {u}, "N[v] has no member"});
        continue;
      }
      for (std::int64_t dy = 0; dy <= 2; ++dy) {
        for (std::int64_t dx = -2; dx <= 2; ++dx) {
          if (dy == 0 && dx <= 0) continue;
          const Point v = u + Point{dx, dy};
          if (!w.interior(v) || w.contains(v)) continue;
          if (s_neighbourhood(w, v) != nu) continue;
          report.locating = false;
          report.violations.push_back({ViolationKind::unlocatable_pair, {u, v}, "N(u) ∩ S = N(w) ∩ S"});
        }
      }
    }
  }

  std::map<Point, std::size_t> index;
  std::vector<Point> members;
  for (std::int64_t y = w.y0(); y <= w.y1(); ++y)
    for (std::int64_t x = w.x0(); x <= w.x1(); ++x)
      if (w.contains({x, y})) {
        index[{x, y}] = members.size();
        members.push_back({x, y});
      }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<bool> required(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    required[i] = w.interior(members[i]);
    for (const Point& q : grid::neighbors(members[i])) {
      const auto it = index.find(q);
      if (it != index.end() && it->second > i) edges.emplace_back(i, it->second);
    }
  }
  if (detail::has_covering_matching(members.size(), edges, required))
    report.pairing = PairingStatus::paired;
  return report;
}

std::string format_report(const WindowReport& r) {
  std::ostringstream out;
  out << "window verdict dominated=" << bool_word(r.dominating) << " locating=" << bool_word(r.locating)
      << " paired=" << (r.pairing == PairingStatus::paired ? "true" : "not-evaluated")
      << " interior=" << r.interior_cells << '\n';
  for (const auto& c : r.violations) out << format_certificate(c) << '\n';
  return out.str();
}

}  // namespace lpds
