#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpds/pattern.hpp"
#include "lpds/rational.hpp"

namespace lpds {

/// Partner of a base residue: the residue it is matched to and the lattice
/// offset placing that residue's representative next to it.
struct Partner {
  std::size_t residue = 0;
  Point offset;

  friend bool operator==(const Partner&, const Partner&) = default;
};

/// Periodic perfect matching of G[S], stored on the quotient. The pattern is
/// the one at whose period the matching lives (possibly a refinement of the
/// input). Construction checks the involution and adjacency invariants.
class Matching {
 public:
  Matching(PeriodicPattern pattern, std::vector<Partner> partners);

  const PeriodicPattern& pattern() const { return pattern_; }
  const std::vector<Partner>& partners() const { return partners_; }
  /// Partner of the representative base()[residue].
  Point partner_point(std::size_t residue) const;
  /// Partner of an arbitrary member p of the pattern.
  Point partner_of(Point p) const;

 private:
  PeriodicPattern pattern_;
  std::vector<Partner> partners_;
};

enum class ViolationKind { undominated, unlocatable_pair, unpairable };

std::string to_string(ViolationKind kind);

struct ViolationCertificate {
  ViolationKind kind;
  std::vector<Point> witnesses;
  std::string detail;
};

struct Verdict {
  bool holds = true;
  std::vector<ViolationCertificate> certificates;
};

/// N[v] ∩ S nonempty for every residue class.
Verdict check_domination(const PeriodicPattern& pattern);

/// Distinct non-members have distinct S-neighbourhoods. Only pairs at
/// Chebyshev distance 1 or 2 are compared, which is exhaustive once the
/// pattern dominates. Throws Error("requires domination") otherwise.
Verdict check_locating(const PeriodicPattern& pattern);

/// Edge of the quotient graph: base()[b] + offset is adjacent to base()[a],
/// a < b. Among offsets realising adjacency the shortest is kept, ties broken
/// lexicographically.
struct QuotientEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  Point offset;
};

std::vector<QuotientEdge> quotient_edges(const PeriodicPattern& pattern);

struct MatchingResult {
  std::optional<Matching> matching;
  /// Set when the matching needed an index-2 refinement of the period.
  std::optional<LatticeBasis> lifted_basis;
  /// Set on failure.
  std::optional<ViolationCertificate> obstruction;
};

/// Perfect matching of the loop-free quotient graph (Edmonds' blossom
/// algorithm); retries on the three index-2 sublattices when allowed.
MatchingResult find_perfect_matching(const PeriodicPattern& pattern, bool allow_lift = true);

enum class PairKind { far, close };
enum class Tier { t1 = 1, t2 = 2, t3 = 3 };

struct SVertexClass {
  Point point;
  Point partner;
  PairKind kind = PairKind::far;
  std::vector<Point> pendant;   // P(v) = N(v) \ N[m(v)]
  std::vector<Point> interval;  // I(v) = N(v) ∩ N(m(v))
  int p0 = 0, p1 = 0, p2 = 0, p3 = 0, i0 = 0;
};

struct OtherClass {
  Point point;
  int s_neighbors = 0;
  Tier tier = Tier::t1;
  bool in_interval = false;
};

/// Per-residue taxonomy of a dominating pattern under a fixed matching.
class Classification {
 public:
  Classification(Matching matching, std::vector<SVertexClass> s, std::vector<OtherClass> others,
                 std::vector<std::int64_t> slot);

  const Matching& matching() const { return matching_; }
  const PeriodicPattern& pattern() const { return matching_.pattern(); }
  const std::vector<SVertexClass>& s_vertices() const { return s_; }
  const std::vector<OtherClass>& others() const { return others_; }

  /// Class of the residue of an arbitrary point.
  const SVertexClass* s_at(Point p) const;
  const OtherClass* other_at(Point p) const;
  /// Whether p lies in I, the union of all interval neighbourhoods.
  bool in_interval(Point p) const;

  std::int64_t cells() const { return pattern().cell_count(); }
  std::int64_t count_s1() const;
  std::int64_t count_s2() const;
  std::int64_t count_tier(Tier t) const;
  /// Residue classes (members or not) lying in I.
  std::int64_t count_interval() const { return interval_count_; }
  std::int64_t count_t3_not_interval() const;
  Rational d_s1() const { return Rational(count_s1(), cells()); }
  Rational d_s2() const { return Rational(count_s2(), cells()); }

 private:
  Matching matching_;
  std::vector<SVertexClass> s_;
  std::vector<OtherClass> others_;
  std::vector<std::int64_t> slot_;  // >= 0: index into s_, < 0: -(index into others_) - 1
  std::vector<bool> interval_;
  std::int64_t interval_count_ = 0;
};

/// Throws Error if the pattern does not dominate.
Classification classify(const Matching& matching);

struct VerifyOptions {
  bool allow_lift = true;
};

struct VerificationReport {
  bool dominating = false;
  bool locating = false;
  bool paired = false;
  Rational density;
  std::optional<Matching> matching;
  std::optional<LatticeBasis> lifted_basis;
  std::vector<ViolationCertificate> violations;
  std::optional<Classification> classification;

  bool valid() const { return dominating && locating && paired; }
};

VerificationReport verify_lpds(const PeriodicPattern& pattern, const VerifyOptions& options = {});

/// `verdict dominated=.. locating=.. paired=.. density=p/q DS1=p/q DS2=p/q`
/// followed by one `certificate` line per violation.
std::string machine_lines(const VerificationReport& report);
std::string format_report(const VerificationReport& report);
std::string format_certificate(const ViolationCertificate& c);

enum class PairingStatus { paired, not_evaluated };

struct WindowReport {
  bool dominating = true;
  bool locating = true;
  PairingStatus pairing = PairingStatus::not_evaluated;
  std::int64_t interior_cells = 0;
  std::vector<ViolationCertificate> violations;
};

/// Checks interior vertices only: domination for vertices whose closed
/// neighbourhood is inside the bounds, locating for such pairs at distance
/// at most 2 with nonempty S-neighbourhoods. Requires at least 5 x 5.
WindowReport verify_window(const FiniteWindow& window);
std::string format_report(const WindowReport& report);

}  // namespace lpds
