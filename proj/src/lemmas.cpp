#include "lpds/lemmas.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <bitset>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "graph_matching.hpp"
#include "lpds/discharge.hpp"
#include "lpds/error.hpp"

namespace lpds {
namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr Mask bit(int i) { return Mask{1} << i; }
int count(Mask m) { return std::popcount(m); }

// Square window of the given radius around the origin. Cells are numbered in
// search order: cells inside `first` come first, each group in spiral order.
class Window {
 public:
  Window(int radius, const std::function<bool(Point)>& first) : radius_(radius) {
    const int side = 2 * radius + 1;
    for (int y = -radius; y <= radius; ++y)
      for (int x = -radius; x <= radius; ++x) cells_.push_back({x, y});
    auto key = [&](Point p) {
      return std::make_tuple(!first(p), grid::chebyshev(p, {0, 0}),
                             std::atan2(static_cast<double>(p.y), static_cast<double>(p.x)));
    };
    std::stable_sort(cells_.begin(), cells_.end(),
                     [&](Point a, Point b) { return key(a) < key(b); });
    lookup_.assign(static_cast<std::size_t>(side * side), -1);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      lookup_[slot(cells_[i])] = static_cast<int>(i);
      if (first(cells_[i])) first_count_ = i + 1;
    }
    open_.resize(cells_.size());
    interior_.resize(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      bool inside = true;
      for (const Point& q : grid::neighbors(cells_[i])) {
        const int j = index(q);
        if (j < 0) inside = false;
        else open_[i] |= bit(j);
      }
      interior_[i] = inside;
    }
  }

  int size() const { return static_cast<int>(cells_.size()); }
  std::size_t first_count() const { return first_count_; }
  Point cell(int i) const { return cells_[static_cast<std::size_t>(i)]; }
  int index(Point p) const {
    if (std::abs(p.x) > radius_ || std::abs(p.y) > radius_) return -1;
    return lookup_[slot(p)];
  }
  int at(Point p) const {
    const int i = index(p);
    if (i < 0) throw Error("point outside the lemma window: " + to_string(p));
    return i;
  }
  Mask open(int i) const { return open_[static_cast<std::size_t>(i)]; }
  Mask closed(int i) const { return open(i) | bit(i); }
  bool interior(int i) const { return interior_[static_cast<std::size_t>(i)]; }
  Mask mask(const std::vector<Point>& pts) const {
    Mask m = 0;
    for (const Point& p : pts) m |= bit(at(p));
    return m;
  }

  FiniteWindow render(Mask s) const {
    FiniteWindow w(-radius_, radius_, -radius_, radius_);
    for (int i = 0; i < size(); ++i)
      if (s & bit(i)) w.set(cell(i), true);
    return w;
  }

 private:
  std::size_t slot(Point p) const {
    const int side = 2 * radius_ + 1;
    return static_cast<std::size_t>((p.y + radius_) * side + (p.x + radius_));
  }

  int radius_;
  std::vector<Point> cells_;
  std::vector<int> lookup_;
  std::size_t first_count_ = 0;
  std::vector<Mask> open_;
  std::vector<bool> interior_;
};

// A violation visible inside the window. `none` is violated when no cell of
// `none` is in S; `isolated` additionally needs `cell` itself in S.
struct Constraint {
  Mask support = 0;
  Mask none = 0;
  int cell = -1;
};

using Evaluator = std::function<bool(Mask decided, Mask s, std::size_t pos)>;

struct Problem {
  const Window* window = nullptr;
  Mask fixed_s = 0;
  std::vector<std::pair<int, int>> pairs;
  Evaluator holds;
};

struct Compiled {
  std::vector<int> order;
  /// Constraints indexed by the search position deciding their last cell.
  std::vector<std::vector<Constraint>> triggers;
  Mask pair_cells = 0;
};

Compiled compile(const Problem& p) {
  const Window& w = *p.window;
  Compiled c;
  for (auto [a, b] : p.pairs) c.pair_cells |= bit(a) | bit(b);
  for (int i = 0; i < w.size(); ++i)
    if (!(p.fixed_s & bit(i))) c.order.push_back(i);
  std::vector<Constraint> all;
  for (int i = 0; i < w.size(); ++i) {
    if (!w.interior(i)) continue;
    all.push_back({w.closed(i), w.closed(i), -1});
    all.push_back({w.closed(i), w.open(i), i});
    for (int j = i + 1; j < w.size(); ++j) {
      if (!w.interior(j) || grid::chebyshev(w.cell(i), w.cell(j)) > 2) continue;
      all.push_back({w.closed(i) | w.closed(j), (w.open(i) ^ w.open(j)) | bit(i) | bit(j), -1});
    }
  }
  c.triggers.resize(c.order.size());
  for (const Constraint& k : all) {
    std::size_t last = 0;
    bool any = false;
    for (std::size_t pos = 0; pos < c.order.size(); ++pos)
      if (k.support & bit(c.order[pos])) {
        last = pos;
        any = true;
      }
    if (any) c.triggers[last].push_back(k);
  }
  return c;
}

bool violated(const Constraint& k, Mask s) {
  if (s & k.none) return false;
  return k.cell < 0 || (s & bit(k.cell));
}

// Whether the visible S-cells admit a matching covering every S-cell whose
// neighbourhood is inside the window, with the fixed pairs kept.
bool pairable(const Problem& p, const Compiled& c, Mask s) {
  const Window& w = *p.window;
  std::vector<int> ids;
  std::vector<int> local(static_cast<std::size_t>(w.size()), -1);
  for (int i = 0; i < w.size(); ++i)
    if ((s & bit(i)) && !(c.pair_cells & bit(i))) {
      local[static_cast<std::size_t>(i)] = static_cast<int>(ids.size());
      ids.push_back(i);
    }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<bool> required(ids.size());
  for (std::size_t a = 0; a < ids.size(); ++a) {
    required[a] = w.interior(ids[a]);
    Mask nb = w.open(ids[a]) & s & ~c.pair_cells;
    while (nb) {
      const int j = std::countr_zero(nb);
      nb &= nb - 1;
      const auto b = static_cast<std::size_t>(local[static_cast<std::size_t>(j)]);
      if (b > a) edges.emplace_back(a, b);
    }
  }
  return detail::has_covering_matching(ids.size(), edges, required);
}

struct Shared {
  std::uint64_t budget = 0;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> over_budget{false};
  std::mutex mutex;
  std::optional<Mask> witness;
  const Window* witness_window = nullptr;
};

class Dfs {
 public:
  Dfs(const Problem& p, const Compiled& c, Shared& shared) : p_(p), c_(c), shared_(shared) {}

  // Explores from `pos`; with a split depth, hands states at that depth to
  // `emit` instead of descending.
  void run(std::size_t pos, Mask decided, Mask s, std::size_t split = 0,
           const std::function<void(std::size_t, Mask, Mask)>& emit = {}) {
    split_ = split;
    emit_ = emit;
    visit(pos, decided, s);
    flush();
  }

  std::uint64_t nodes() const { return total_; }

 private:
  void visit(std::size_t pos, Mask decided, Mask s) {
    if (emit_ && pos == split_) {
      emit_(pos, decided, s);
      return;
    }
    if (shared_.stop.load(std::memory_order_relaxed)) return;
    ++total_;
    if (++pending_ == 1 << 16) flush();
    if (p_.holds(decided, s, pos)) return;
    if (pos == c_.order.size()) {
      if (pairable(p_, c_, s)) {
        std::lock_guard lock(shared_.mutex);
        if (!shared_.witness) {
          shared_.witness = s;
          shared_.witness_window = p_.window;
        }
        shared_.stop = true;
      }
      return;
    }
    const int cell = c_.order[pos];
    const Mask d2 = decided | bit(cell);
    for (const Mask s2 : {s, s | bit(cell)}) {
      bool bad = false;
      for (const Constraint& k : c_.triggers[pos])
        if (violated(k, s2)) {
          bad = true;
          break;
        }
      if (!bad) visit(pos + 1, d2, s2);
    }
  }

  void flush() {
    const std::uint64_t now = shared_.nodes.fetch_add(pending_) + pending_;
    pending_ = 0;
    if (now > shared_.budget) {
      shared_.over_budget = true;
      shared_.stop = true;
    }
  }

  const Problem& p_;
  const Compiled& c_;
  Shared& shared_;
  std::size_t split_ = 0;
  std::function<void(std::size_t, Mask, Mask)> emit_;
  std::uint64_t total_ = 0;
  std::uint64_t pending_ = 0;
};

struct Task {
  std::size_t problem;
  std::size_t pos;
  Mask decided;
  Mask s;
};

// Runs every problem to exhaustion. Work is split on a fixed prefix depth so
// node counts do not depend on the number of workers.
LemmaVerdict exhaust(LemmaTarget target, const std::vector<Problem>& problems,
                     const CheckOptions& options) {
  const auto start = Clock::now();
  Shared shared;
  shared.budget = options.node_budget;
  std::vector<Compiled> compiled;
  for (const Problem& p : problems) compiled.push_back(compile(p));

  std::uint64_t prefix_nodes = 0;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const Compiled& c = compiled[i];
    Dfs d(problems[i], c, shared);
    const std::size_t split = std::min<std::size_t>(8, c.order.size());
    d.run(0, problems[i].fixed_s, problems[i].fixed_s, split,
          [&](std::size_t pos, Mask dec, Mask s) { tasks.push_back({i, pos, dec, s}); });
    prefix_nodes += d.nodes();
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::uint64_t> counts(tasks.size(), 0);
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      if (shared.stop) break;
      const Task& k = tasks[t];
      Dfs d(problems[k.problem], compiled[k.problem], shared);
      d.run(k.pos, k.decided, k.s);
      counts[t] = d.nodes();
    }
  };
  const int n = std::max(1, options.workers);
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  LemmaVerdict v;
  v.target = target;
  v.configs_examined = prefix_nodes;
  for (std::uint64_t c : counts) v.configs_examined += c;
  v.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  if (shared.witness) {
    v.outcome = LemmaOutcome::counterexample;
    v.witness = shared.witness_window->render(*shared.witness);
  } else if (shared.over_budget) {
    v.outcome = LemmaOutcome::inconclusive;
    v.detail = "node budget " + std::to_string(options.node_budget) + " exceeded after " +
               std::to_string(v.configs_examined) + " configurations";
  }
  return v;
}

// Pendant and interval bounds ---------------------------------------------

std::vector<Point> pendant_cells(Point v, Point m) {
  std::vector<Point> out;
  for (const Point& u : grid::neighbors(v))
    if (u != m && !grid::adjacent(u, m)) out.push_back(u);
  return out;
}

std::vector<Point> interval_cells(Point v, Point m) {
  std::vector<Point> out;
  for (const Point& u : grid::neighbors(v))
    if (grid::adjacent(u, m)) out.push_back(u);
  return out;
}

struct Bounds {
  int lo;
  int hi;
};

Bounds s_neighbours(const Window& w, int u, Mask decided, Mask s) {
  const int lo = count(w.open(u) & s);
  return {lo, lo + count(w.open(u) & ~decided)};
}

Problem lemma1_problem(const Window& w, int part, Point m) {
  const Point v{0, 0};
  Problem p;
  p.window = &w;
  const int iv = w.at(v), im = w.at(m);
  p.fixed_s = bit(iv) | bit(im);
  p.pairs = {{iv, im}};
  std::vector<int> cells;
  for (const Point& u : part == 2 ? interval_cells(v, m) : pendant_cells(v, m)) cells.push_back(w.at(u));
  const Window* wp = &w;
  p.holds = [wp, part, cells](Mask decided, Mask s, std::size_t) {
    int possible = 0;
    for (int u : cells) {
      const bool known = decided & bit(u);
      const bool member = s & bit(u);
      const Bounds b = s_neighbours(*wp, u, decided, s);
      if (part == 3) {
        if (known && (member || b.lo >= 3)) return true;
      } else if (!(known && member) && b.lo <= part) {
        ++possible;
      }
    }
    return part != 3 && possible <= 1;
  };
  return p;
}

// r(v) claims ---------------------------------------------------------------

Rational ch3_from_counts(PairKind kind, int i0, int p1, int p2) {
  const Rational ch2 = kind == PairKind::far ? Rational(9, 2) : Rational(5);
  const int interval = kind == PairKind::far ? 2 : 4;
  return ch2 - Rational(interval - i0, 2) - Rational(p1) - Rational(p2, 2);
}

// Adjacent pair -------------------------------------------------------------

struct PairSide {
  int v, m;
  bool close;
  std::vector<int> interval;
  std::vector<int> pendant;
};

PairSide side(const Window& w, Point v, Point m) {
  PairSide s{w.at(v), w.at(m), v.x == m.x || v.y == m.y, {}, {}};
  for (const Point& u : interval_cells(v, m)) s.interval.push_back(w.at(u));
  for (const Point& u : pendant_cells(v, m)) s.pendant.push_back(w.at(u));
  return s;
}

// 120 r(v) by pair kind, i0, p0, p1, p3; every value is an integer since
// r has denominator 2 p3 with p3 <= 5.
class RTable {
 public:
  RTable() {
    for (int close = 0; close < 2; ++close) {
      const PairKind kind = close ? PairKind::close : PairKind::far;
      const int np = close ? 3 : 5;
      for (int i0 = 0; i0 <= 4; ++i0)
        for (int p0 = 0; p0 <= np; ++p0)
          for (int p1 = 0; p0 + p1 <= np; ++p1)
            for (int p3 = 0; p0 + p1 + p3 <= np; ++p3) {
              const Rational r =
                  r_value(ch3_from_counts(kind, i0, p1, np - p0 - p1 - p3), p3) * Rational(120);
              if (r.denominator() != 1) throw Error("r table: non-integral 120 r");
              at(close, i0, p0, p1, p3) = static_cast<int>(r.numerator());
            }
    }
  }
  int get(bool close, int i0, int p0, int p1, int p3) const {
    return values_[index(close, i0, p0, p1, p3)];
  }

 private:
  static std::size_t index(int close, int i0, int p0, int p1, int p3) {
    return static_cast<std::size_t>((((close * 5 + i0) * 6 + p0) * 6 + p1) * 6 + p3);
  }
  int& at(int close, int i0, int p0, int p1, int p3) { return values_[index(close, i0, p0, p1, p3)]; }
  std::array<int, 2 * 5 * 6 * 6 * 6> values_{};
};

const RTable& r_table() {
  static const RTable table;
  return table;
}

// Least 120 r(v) over every completion of the partial configuration. Cells
// in `forced` lie in I; cells in `optional` may or may not.
int min_r120(const Window& w, const PairSide& p, Mask decided, Mask s, Mask forced, Mask optional) {
  int i0 = 0;
  for (int u : p.interval)
    if (s & bit(u)) ++i0;
  // Reachable (p0, p1, p3) as bit p0 * 36 + p1 * 6 + p3.
  std::bitset<216> reach;
  reach[0] = true;
  for (int u : p.pendant) {
    const bool known = decided & bit(u);
    const bool can_s = !known || (s & bit(u));
    const bool can_out = !known || !(s & bit(u));
    bool p0 = can_s, tiers[4] = {false, false, false, false};
    if (can_out) {
      if (forced & bit(u)) {
        p0 = true;
      } else {
        if (optional & bit(u)) p0 = true;
        const Bounds b = s_neighbours(w, u, decided, s);
        for (int t = std::max(1, b.lo); t <= std::min(3, b.hi); ++t) tiers[t] = true;
        if (b.lo > 3) tiers[3] = true;
      }
    }
    std::bitset<216> next;
    if (p0) next |= reach << 36;
    if (tiers[1]) next |= reach << 6;
    if (tiers[2]) next |= reach;
    if (tiers[3]) next |= reach << 1;
    reach = next;
  }
  int best = 60;
  for (std::size_t k = 0; k < reach.size(); ++k)
    if (reach[k]) {
      const int p0 = static_cast<int>(k / 36), p1 = static_cast<int>(k / 6 % 6), p3 = static_cast<int>(k % 6);
      best = std::min(best, r_table().get(p.close, i0, p0, p1, p3));
    }
  return best;
}

Problem adjacent_problem(const Window& w, Point v1, Point v2, Point m1, Point m2) {
  Problem p;
  p.window = &w;
  const PairSide a = side(w, v1, m1), b = side(w, v2, m2);
  p.fixed_s = bit(a.v) | bit(a.m) | bit(b.v) | bit(b.m);
  p.pairs = {{a.v, a.m}, {b.v, b.m}};
  const std::size_t ready = w.first_count() - static_cast<std::size_t>(count(p.fixed_s));
  Mask pendants = 0;
  Mask forced = 0;
  for (const PairSide* side : {&a, &b})
    for (int u : side->pendant) {
      pendants |= bit(u);
      for (const PairSide* pair : {&a, &b})
        if ((w.open(u) & bit(pair->v)) && (w.open(u) & bit(pair->m))) forced |= bit(u);
    }
  const Window* wp = &w;
  const Mask fixed = p.fixed_s;
  p.holds = [wp, a, b, ready, fixed, pendants, forced](Mask decided, Mask s, std::size_t pos) {
    const Window& w = *wp;
    // Outside cells that may still end up in I through an unfixed pair.
    const Mask maybe = (s | ~decided) & ~fixed;
    Mask optional = 0;
    for (Mask rest = pendants & ~forced; rest; rest &= rest - 1) {
      const int u = std::countr_zero(rest);
      const Mask free = w.open(u) & maybe;
      for (Mask q = free; q; q &= q - 1)
        if (w.open(std::countr_zero(q)) & free) {
          optional |= bit(u);
          break;
        }
    }
    if (min_r120(w, a, decided, s, forced, optional) + min_r120(w, b, decided, s, forced, optional) >= 60)
      return true;
    if (pos < ready) return false;
    // Region decided: minimise jointly over which optional cells lie in I.
    optional &= ~s;
    for (Mask sub = optional;; sub = (sub - 1) & optional) {
      if (min_r120(w, a, decided, s, forced | sub, 0) + min_r120(w, b, decided, s, forced | sub, 0) < 60)
        return false;
      if (!sub) break;
    }
    return true;
  };
  return p;
}

}  // namespace

std::string to_string(LemmaTarget t) {
  switch (t) {
    case LemmaTarget::lemma1_1: return "Lemma1.1";
    case LemmaTarget::lemma1_2: return "Lemma1.2";
    case LemmaTarget::lemma1_3: return "Lemma1.3";
    case LemmaTarget::r_half: return "Claim-r-half";
    case LemmaTarget::r_lower_bound: return "Claim-r-lowerbound";
    case LemmaTarget::adjacent_sum: return "Claim-adjacent-sum";
  }
  return "?";
}

std::string to_string(LemmaOutcome o) {
  switch (o) {
    case LemmaOutcome::holds: return "holds";
    case LemmaOutcome::counterexample: return "counterexample";
    case LemmaOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

LemmaVerdict check_lemma1(int part, const CheckOptions& options) {
  if (part < 1 || part > 3) throw Error("part must be 1, 2 or 3");
  const Window w(part == 3 ? 3 : 2, [](Point p) { return grid::chebyshev(p, {0, 0}) <= 2; });
  std::vector<Problem> problems;
  // Up to symmetry the partner of (0,0) is (1,1) when far and (1,0) when close.
  problems.push_back(lemma1_problem(w, part, {1, 1}));
  if (part != 3) problems.push_back(lemma1_problem(w, part, {1, 0}));
  const LemmaTarget t = part == 1 ? LemmaTarget::lemma1_1
                        : part == 2 ? LemmaTarget::lemma1_2
                                    : LemmaTarget::lemma1_3;
  return exhaust(t, problems, options);
}

std::vector<LemmaVerdict> check_r_claims() {
  const auto start = Clock::now();
  LemmaVerdict half, lower;
  half.target = LemmaTarget::r_half;
  lower.target = LemmaTarget::r_lower_bound;
  for (const PairKind kind : {PairKind::far, PairKind::close}) {
    const int np = kind == PairKind::far ? 5 : 3;
    const int ni = kind == PairKind::far ? 2 : 4;
    for (int i0 = 0; i0 <= ni; ++i0)
      for (int p0 = 0; p0 <= np; ++p0)
        for (int p1 = 0; p1 <= std::min(1, np - p0); ++p1)
          for (int p3 = 0; p3 <= np - p0 - p1; ++p3) {
            const int p2 = np - p0 - p1 - p3;
            if (kind == PairKind::far && p0 + p3 < 1) continue;
            const Rational r = r_value(ch3_from_counts(kind, i0, p1, p2), p3);
            std::ostringstream os;
            os << (kind == PairKind::far ? "far" : "close") << " i0=" << i0 << " p0=" << p0
               << " p1=" << p1 << " p2=" << p2 << " p3=" << p3 << " r=" << to_string(r);
            ++half.configs_examined;
            ++lower.configs_examined;
            const bool condition = kind == PairKind::close || p0 + i0 >= 1 || p1 == 0;
            if (condition && r != Rational(1, 2) && half.holds()) {
              half.outcome = LemmaOutcome::counterexample;
              half.detail = os.str();
            }
            if (p3 > 0 && r < Rational(p3 - 1, 2 * p3) && lower.holds()) {
              lower.outcome = LemmaOutcome::counterexample;
              lower.detail = os.str();
            }
          }
  }
  half.elapsed_ms = lower.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return {half, lower};
}

LemmaVerdict check_adjacent_sum(const CheckOptions& options) {
  const Window horizontal(3, [](Point p) { return std::abs(p.y) <= 2; });
  const Window vertical(3, [](Point p) { return std::abs(p.x) <= 2; });
  std::vector<Problem> problems;
  for (const auto& [w, v1, v2] : {std::tuple{&horizontal, Point{1, 0}, Point{-1, 0}},
                                  std::tuple{&vertical, Point{0, 1}, Point{0, -1}}})
    for (const Point& m1 : grid::neighbors(v1))
      for (const Point& m2 : grid::neighbors(v2))
        if (m1 != m2 && m1 != v2 && m2 != v1) problems.push_back(adjacent_problem(*w, v1, v2, m1, m2));
  return exhaust(LemmaTarget::adjacent_sum, problems, options);
}

std::vector<LemmaVerdict> check_all(const CheckOptions& options) {
  std::vector<LemmaVerdict> out;
  for (int part = 1; part <= 3; ++part) out.push_back(check_lemma1(part, options));
  for (auto& v : check_r_claims()) out.push_back(std::move(v));
  out.push_back(check_adjacent_sum(options));
  return out;
}

std::string format_verdict(const LemmaVerdict& v) {
  std::ostringstream os;
  os << to_string(v.target) << ' ' << to_string(v.outcome);
  if (v.outcome == LemmaOutcome::counterexample) {
    if (!v.detail.empty()) os << ' ' << v.detail;
    os << '\n';
    if (v.witness) os << serialize(*v.witness);
    return os.str();
  }
  os << " configs=" << v.configs_examined << " elapsed=" << v.elapsed_ms;
  if (!v.detail.empty()) os << " # " << v.detail;
  os << '\n';
  return os.str();
}

}  // namespace lpds
