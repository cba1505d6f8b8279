#include "lpds/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "lpds/error.hpp"

namespace lpds {
namespace {

std::int64_t floor_div(std::int64_t n, std::int64_t d) {
  std::int64_t q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t n, std::int64_t d) { return n - floor_div(n, d) * d; }

// Returns (g, s, t) with s*a + t*b = g = gcd(|a|, |b|).
std::tuple<std::int64_t, std::int64_t, std::int64_t> egcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace

// Domain ------------------------------------------------------------------

Domain::Domain(const LatticeBasis& basis) {
  if (basis.det() == 0) throw Error("degenerate lattice");
  *this = from_generators({basis.u, basis.v});
}

Domain Domain::from_generators(const std::vector<Point>& generators) {
  bool has_pivot = false;
  Point pivot{};
  std::int64_t x_gcd = 0;
  for (const Point& w : generators) {
    if (w.y == 0) {
      x_gcd = std::gcd(x_gcd, w.x);
      continue;
    }
    if (!has_pivot) {
      pivot = w;
      has_pivot = true;
      continue;
    }
    const auto [g, s, t] = egcd(pivot.y, w.y);
    const Point merged = s * pivot + t * w;
    const Point rest_pivot = pivot - (pivot.y / g) * merged;
    const Point rest_w = w - (w.y / g) * merged;
    x_gcd = std::gcd(x_gcd, std::gcd(rest_pivot.x, rest_w.x));
    pivot = merged;
  }
  if (!has_pivot || x_gcd == 0) throw Error("degenerate lattice");
  if (pivot.y < 0) pivot = -pivot;
  Domain d;
  d.a_ = x_gcd;
  d.c_ = pivot.y;
  d.b_ = floor_mod(pivot.x, x_gcd);
  return d;
}

Point Domain::reduce(Point p) const {
  const std::int64_t k = floor_div(p.y, c_);
  const std::int64_t y = p.y - k * c_;
  const std::int64_t x = floor_mod(p.x - k * b_, a_);
  return {x, y};
}

// PeriodicPattern -----------------------------------------------------------

PeriodicPattern::PeriodicPattern(LatticeBasis basis, const std::vector<Point>& base)
    : basis_(basis), domain_(basis) {
  residue_of_cell_.assign(domain_.cell_count(), kNone);
  base_.reserve(base.size());
  for (const Point& p : base) {
    const Point r = domain_.reduce(p);
    if (residue_of_cell_[domain_.index(r)] != kNone)
      throw Error("base points " + to_string(p) + " collide modulo the lattice");
    residue_of_cell_[domain_.index(r)] = 0;
    base_.push_back(r);
  }
  std::sort(base_.begin(), base_.end());
  for (std::size_t i = 0; i < base_.size(); ++i) residue_of_cell_[domain_.index(base_[i])] = i;
}

std::optional<std::size_t> PeriodicPattern::residue(Point p) const {
  const std::size_t r = residue_of_cell_[domain_.index(p)];
  if (r == kNone) return std::nullopt;
  return r;
}

// FiniteWindow --------------------------------------------------------------

FiniteWindow::FiniteWindow(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1)
    : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
  if (x0 > x1 || y0 > y1) throw Error("degenerate window bounds");
  members_.assign(static_cast<std::size_t>(width() * height()), 0);
}

void FiniteWindow::set(Point p, bool member) {
  if (!in_bounds(p)) throw Error("point " + to_string(p) + " outside window");
  members_[offset(p)] = member ? 1 : 0;
}

// XDescriptor ---------------------------------------------------------------

XDescriptor XDescriptor::periodic(std::vector<bool> bits) {
  if (bits.empty()) throw Error("periodic X needs period >= 1");
  return {Periodic{std::move(bits)}};
}

XDescriptor XDescriptor::finite(std::vector<std::int64_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return {Explicit{std::move(members)}};
}

bool XDescriptor::indicator(std::int64_t k) const {
  if (const auto* p = std::get_if<Periodic>(&value)) {
    const auto period = static_cast<std::int64_t>(p->bits.size());
    return p->bits[static_cast<std::size_t>(floor_mod(k, period))];
  }
  const auto& m = std::get<Explicit>(value).members;
  return std::binary_search(m.begin(), m.end(), k);
}

// Densities -----------------------------------------------------------------

Rational density(const PeriodicPattern& pattern) {
  return Rational(static_cast<std::int64_t>(pattern.size()), pattern.cell_count());
}

Rational window_density(const PeriodicPattern& pattern, Point center, std::int64_t k) {
  if (k < 0) throw Error("k must be non-negative");
  std::int64_t hits = 0;
  for (std::int64_t y = center.y - k; y <= center.y + k; ++y)
    for (std::int64_t x = center.x - k; x <= center.x + k; ++x)
      if (pattern.contains({x, y})) ++hits;
  return Rational(hits, (2 * k + 1) * (2 * k + 1));
}

Rational window_density(const FiniteWindow& window, Point center, std::int64_t k) {
  if (k < 0) throw Error("k must be non-negative");
  if (!window.in_bounds({center.x - k, center.y - k}) ||
      !window.in_bounds({center.x + k, center.y + k}))
    throw Error("k-neighbourhood exceeds window bounds");
  std::int64_t hits = 0;
  for (std::int64_t y = center.y - k; y <= center.y + k; ++y)
    for (std::int64_t x = center.x - k; x <= center.x + k; ++x)
      if (window.contains({x, y})) ++hits;
  return Rational(hits, (2 * k + 1) * (2 * k + 1));
}

// Catalog -------------------------------------------------------------------

const std::vector<Point>& l0_base() {
  static const std::vector<Point> base = {{0, 0}, {0, 3}, {2, 2}, {3, 1},
                                          {4, 3}, {5, 0}, {7, 1}, {7, 2}};
  return base;
}

PeriodicPattern catalog_l1() { return PeriodicPattern({{2, 1}, {-3, 3}}, {{0, 0}, {-1, 1}}); }

PeriodicPattern catalog_l2() { return PeriodicPattern({{9, 0}, {0, 4}}, l0_base()); }

PeriodicPattern catalog_lx(const XDescriptor::Periodic& x) {
  if (x.bits.empty()) throw Error("periodic X needs period >= 1");
  const auto period = static_cast<std::int64_t>(x.bits.size());
  std::vector<Point> base;
  base.reserve(l0_base().size() * x.bits.size());
  for (std::int64_t k = 0; k < period; ++k) {
    const std::int64_t shift = x.bits[static_cast<std::size_t>(k)] ? 1 : 0;
    for (const Point& a : l0_base()) base.push_back(a + Point{9 * k, shift});
  }
  return PeriodicPattern({{9 * period, 0}, {0, 4}}, base);
}

bool lx_contains(const XDescriptor& x, Point p) {
  const std::int64_t column = floor_div(p.x, 9);
  const std::int64_t shift = x.indicator(column) ? 1 : 0;
  const Point local{floor_mod(p.x, 9), floor_mod(p.y - shift, 4)};
  const auto& base = l0_base();
  return std::find(base.begin(), base.end(), local) != base.end();
}

FiniteWindow catalog_lx_window(const XDescriptor& x, std::int64_t x0, std::int64_t x1,
                               std::int64_t y0, std::int64_t y1) {
  FiniteWindow w(x0, x1, y0, y1);
  for (std::int64_t y = y0; y <= y1; ++y)
    for (std::int64_t xx = x0; xx <= x1; ++xx)
      if (lx_contains(x, {xx, y})) w.set({xx, y}, true);
  return w;
}

PatternOrWindow catalog(CatalogName name, const std::optional<XDescriptor>& x,
                        const std::optional<WindowBounds>& bounds) {
  switch (name) {
    case CatalogName::L1:
      return catalog_l1();
    case CatalogName::L2:
      return catalog_l2();
    case CatalogName::LX:
      break;
  }
  if (!x) throw Error("LX requires an X descriptor");
  if (const auto* p = std::get_if<XDescriptor::Periodic>(&x->value)) return catalog_lx(*p);
  if (!bounds) throw Error("finite X requires window bounds");
  return catalog_lx_window(*x, bounds->x0, bounds->x1, bounds->y0, bounds->y1);
}

// Normal forms --------------------------------------------------------------

PeriodicPattern translate(const PeriodicPattern& pattern, Point offset) {
  std::vector<Point> moved;
  moved.reserve(pattern.size());
  for (const Point& p : pattern.base()) moved.push_back(p + offset);
  return PeriodicPattern(pattern.basis(), moved);
}

PeriodicPattern canonicalize(const PeriodicPattern& pattern) {
  const auto& base = pattern.base();
  if (base.empty()) return PeriodicPattern({{1, 0}, {0, 1}}, {});
  const LatticeBasis hermite = pattern.domain().basis();
  std::vector<Point> generators = {hermite.u, hermite.v};
  for (std::size_t i = 1; i < base.size(); ++i) {
    const Point t = base[i] - base[0];
    const bool stabilises = std::all_of(base.begin(), base.end(),
                                        [&](const Point& p) { return pattern.contains(p + t); });
    if (stabilises) generators.push_back(t);
  }
  const Domain period = Domain::from_generators(generators);
  std::set<Point> reduced;
  for (const Point& p : base) reduced.insert(period.reduce(p));
  return PeriodicPattern(period.basis(), {reduced.begin(), reduced.end()});
}

PeriodicPattern translation_normal_form(const PeriodicPattern& pattern) {
  const PeriodicPattern canonical = canonicalize(pattern);
  if (canonical.size() == 0) return canonical;
  std::optional<PeriodicPattern> best;
  for (const Point& p : canonical.base()) {
    PeriodicPattern moved = translate(canonical, -p);
    if (!best || moved.base() < best->base()) best = std::move(moved);
  }
  return *best;
}

PeriodicPattern refine(const PeriodicPattern& pattern, const LatticeBasis& sublattice) {
  const Domain& coarse = pattern.domain();
  if (!coarse.is_lattice_vector(sublattice.u) || !coarse.is_lattice_vector(sublattice.v))
    throw Error("refinement basis is not a sublattice");
  const Domain fine(sublattice);
  std::vector<Point> base;
  for (std::size_t i = 0; i < fine.cell_count(); ++i)
    if (pattern.contains(fine.cell(i))) base.push_back(fine.cell(i));
  return PeriodicPattern(sublattice, base);
}

std::vector<LatticeBasis> index2_sublattices(const LatticeBasis& b) {
  return {{2 * b.u, b.v}, {b.u, 2 * b.v}, {b.u + b.v, b.u - b.v}};
}

FiniteWindow to_window(const PeriodicPattern& pattern, const WindowBounds& bounds) {
  FiniteWindow w(bounds.x0, bounds.x1, bounds.y0, bounds.y1);
  for (std::int64_t y = bounds.y0; y <= bounds.y1; ++y)
    for (std::int64_t x = bounds.x0; x <= bounds.x1; ++x)
      if (pattern.contains({x, y})) w.set({x, y}, true);
  return w;
}

}  // namespace lpds
