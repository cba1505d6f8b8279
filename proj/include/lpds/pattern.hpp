#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lpds/grid.hpp"
#include "lpds/rational.hpp"

namespace lpds {

/// Rank-2 period lattice spanned by u and v.
struct LatticeBasis {
  Point u;
  Point v;

  constexpr std::int64_t det() const { return u.x * v.y - u.y * v.x; }
  friend constexpr bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

/// Hermite normal form of a full-rank sublattice of Z^2: the lattice is
/// spanned by (a, 0) and (b, c) with a, c > 0 and 0 <= b < a. The rectangle
/// [0, a) x [0, c) is a fundamental domain, and its cells are the canonical
/// residue representatives, indexed row-major.
class Domain {
 public:
  Domain() = default;
  explicit Domain(const LatticeBasis& basis);

  /// Lattice generated by an arbitrary list of integer vectors; throws if
  /// they do not span a rank-2 lattice.
  static Domain from_generators(const std::vector<Point>& generators);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::size_t cell_count() const { return static_cast<std::size_t>(a_ * c_); }
  LatticeBasis basis() const { return {{a_, 0}, {b_, c_}}; }

  /// Canonical residue representative of p.
  Point reduce(Point p) const;
  /// Cell index of the residue class of p.
  std::size_t index(Point p) const {
    const Point r = reduce(p);
    return static_cast<std::size_t>(r.y * a_ + r.x);
  }
  Point cell(std::size_t i) const {
    const auto k = static_cast<std::int64_t>(i);
    return {k % a_, k / a_};
  }
  bool is_lattice_vector(Point p) const { return reduce(p) == Point{0, 0}; }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::int64_t a_ = 1;
  std::int64_t b_ = 0;
  std::int64_t c_ = 1;
};

/// A periodic subset of the king grid: base residues repeated over a lattice.
/// Base points are stored as canonical residue representatives, sorted by
/// (x, then y), pairwise distinct modulo the lattice.
class PeriodicPattern {
 public:
  PeriodicPattern(LatticeBasis basis, const std::vector<Point>& base);

  const LatticeBasis& basis() const { return basis_; }
  const Domain& domain() const { return domain_; }
  const std::vector<Point>& base() const { return base_; }
  std::size_t size() const { return base_.size(); }
  std::int64_t cell_count() const { return static_cast<std::int64_t>(domain_.cell_count()); }

  bool contains(Point p) const { return residue_of_cell_[domain_.index(p)] != kNone; }
  /// Index into base() of the residue class of p, if p is in the pattern.
  std::optional<std::size_t> residue(Point p) const;

  friend bool operator==(const PeriodicPattern& a, const PeriodicPattern& b) {
    return a.basis_ == b.basis_ && a.base_ == b.base_;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  LatticeBasis basis_;
  Domain domain_;
  std::vector<Point> base_;
  std::vector<std::size_t> residue_of_cell_;
};

/// Inclusive rectangle [x0..x1] x [y0..y1] with explicit membership.
class FiniteWindow {
 public:
  FiniteWindow(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1);

  std::int64_t x0() const { return x0_; }
  std::int64_t x1() const { return x1_; }
  std::int64_t y0() const { return y0_; }
  std::int64_t y1() const { return y1_; }
  std::int64_t width() const { return x1_ - x0_ + 1; }
  std::int64_t height() const { return y1_ - y0_ + 1; }

  bool in_bounds(Point p) const { return p.x >= x0_ && p.x <= x1_ && p.y >= y0_ && p.y <= y1_; }
  /// Whether the closed neighbourhood of p lies inside the bounds.
  bool interior(Point p) const {
    return p.x > x0_ && p.x < x1_ && p.y > y0_ && p.y < y1_;
  }
  /// Membership; false outside the bounds.
  bool contains(Point p) const { return in_bounds(p) && members_[offset(p)] != 0; }
  void set(Point p, bool member);

  friend bool operator==(const FiniteWindow&, const FiniteWindow&) = default;

 private:
  std::size_t offset(Point p) const {
    return static_cast<std::size_t>((p.y - y0_) * width() + (p.x - x0_));
  }
  std::int64_t x0_, x1_, y0_, y1_;
  std::vector<std::uint8_t> members_;
};

/// The set X of column indices shifted by (0, 1) in the L_X construction.
struct XDescriptor {
  /// X = { k : bits[k mod bits.size()] }.
  struct Periodic {
    std::vector<bool> bits;
  };
  /// X given as a finite set.
  struct Explicit {
    std::vector<std::int64_t> members;
  };
  std::variant<Periodic, Explicit> value;

  static XDescriptor periodic(std::vector<bool> bits);
  static XDescriptor finite(std::vector<std::int64_t> members);
  bool indicator(std::int64_t k) const;
};

Rational density(const PeriodicPattern& pattern);
/// |S ∩ N^k[center]| / (2k+1)^2.
Rational window_density(const PeriodicPattern& pattern, Point center, std::int64_t k);
Rational window_density(const FiniteWindow& window, Point center, std::int64_t k);

// Catalog ---------------------------------------------------------------

enum class CatalogName { L1, L2, LX };

/// Base L_0 of the 9 x 4 tiling.
const std::vector<Point>& l0_base();
PeriodicPattern catalog_l1();
PeriodicPattern catalog_l2();
/// L_X for a periodic X of period P: basis (9P, 0), (0, 4).
PeriodicPattern catalog_lx(const XDescriptor::Periodic& x);
/// L_X truncated to a rectangle; works for either kind of X.
FiniteWindow catalog_lx_window(const XDescriptor& x, std::int64_t x0, std::int64_t x1,
                               std::int64_t y0, std::int64_t y1);
bool lx_contains(const XDescriptor& x, Point p);

struct WindowBounds {
  std::int64_t x0, x1, y0, y1;
};

using PatternOrWindow = std::variant<PeriodicPattern, FiniteWindow>;

/// Dispatching form: L1/L2 and periodic L_X yield patterns, finite L_X a
/// window over `bounds` (required in that case).
PatternOrWindow catalog(CatalogName name, const std::optional<XDescriptor>& x = std::nullopt,
                        const std::optional<WindowBounds>& bounds = std::nullopt);

// Normal forms ------------------------------------------------------------

/// Normal form of the point set: minimal period lattice in Hermite form and
/// canonical residues. Equal iff the point sets are equal.
PeriodicPattern canonicalize(const PeriodicPattern& pattern);
/// Least canonical form over all translates of the pattern.
PeriodicPattern translation_normal_form(const PeriodicPattern& pattern);
PeriodicPattern translate(const PeriodicPattern& pattern, Point offset);

/// Same point set over an index-n sublattice given by `sublattice`, which
/// must be contained in the pattern's lattice.
PeriodicPattern refine(const PeriodicPattern& pattern, const LatticeBasis& sublattice);
/// The three index-2 sublattices (2u, v), (u, 2v), (u+v, u-v).
std::vector<LatticeBasis> index2_sublattices(const LatticeBasis& basis);

// Text formats ------------------------------------------------------------

/// Parses `u=(a,b) v=(c,d)`.
LatticeBasis parse_basis(const std::string& text);
PeriodicPattern parse_pattern(const std::string& text);
std::string serialize(const PeriodicPattern& pattern);
FiniteWindow parse_window(const std::string& text);
std::string serialize(const FiniteWindow& window);
/// Dispatches on the first keyword (`lattice` or `window`).
PatternOrWindow parse(const std::string& text);
/// Parses `x=[x0..x1] y=[y0..y1]`.
WindowBounds parse_bounds(const std::string& text);
/// Parses `period=<P> bits=<b1..bP>` or `set={k1,k2,...}`.
XDescriptor parse_x(const std::string& text);

/// Window truncation of a periodic pattern.
FiniteWindow to_window(const PeriodicPattern& pattern, const WindowBounds& bounds);

}  // namespace lpds
