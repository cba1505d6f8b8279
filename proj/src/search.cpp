#include "lpds/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <sstream>
#include <thread>

#include "lpds/error.hpp"
#include "lpds/verify.hpp"

namespace lpds {
namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

// Pruning predicates over the fundamental domain: each is violated once every
// cell of `none` is decided outside S. Indexed by the cell completing them.
struct Deadlines {
  std::size_t cells = 0;
  std::vector<std::vector<Mask>> at;
};

Deadlines deadlines(const Domain& d) {
  Deadlines out;
  out.cells = d.cell_count();
  out.at.resize(out.cells);
  auto residues = [&](const std::vector<Point>& pts) {
    Mask m = 0;
    for (const Point& p : pts) m |= bit(d.index(p));
    return m;
  };
  auto add = [&](Mask m) { out.at[static_cast<std::size_t>(63 - std::countl_zero(m))].push_back(m); };
  for (std::size_t i = 0; i < out.cells; ++i) {
    const Point p = d.cell(i);
    std::vector<Point> closed = {p};
    for (const Point& q : grid::neighbors(p)) closed.push_back(q);
    add(residues(closed));
    // Non-members p and q with the same S-neighbourhood: nothing in the
    // symmetric difference of the neighbourhoods, nor p or q, is in S.
    for (std::int64_t dy = 0; dy <= 2; ++dy)
      for (std::int64_t dx = -2; dx <= 2; ++dx) {
        if (dy == 0 && dx <= 0) continue;
        const Point q = p + Point{dx, dy};
        std::vector<Point> diff = {p, q};
        const auto np = grid::neighbors(p), nq = grid::neighbors(q);
        for (const Point& a : np)
          if (std::find(nq.begin(), nq.end(), a) == nq.end()) diff.push_back(a);
        for (const Point& b : nq)
          if (std::find(np.begin(), np.end(), b) == np.end()) diff.push_back(b);
        add(residues(diff));
      }
  }
  for (auto& list : out.at) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return out;
}

struct Shared {
  std::optional<std::uint64_t> budget;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> over{false};
};

class Explorer {
 public:
  Explorer(const Domain& domain, const Deadlines& dl, int k, bool fix_first, Shared& shared)
      : domain_(domain), dl_(dl), k_(k), fix_first_(fix_first), shared_(shared) {}

  struct State {
    std::size_t pos;
    Mask s;
    int count;
  };

  void run(const State& st, std::size_t split = 0, std::vector<State>* out = nullptr) {
    split_ = split;
    out_ = out;
    visit(st.pos, st.s, st.count);
    flush();
  }

  std::uint64_t nodes() const { return nodes_; }
  std::vector<PeriodicPattern>& found() { return found_; }

 private:
  void visit(std::size_t pos, Mask s, int count) {
    if (out_ && pos == split_) {
      out_->push_back({pos, s, count});
      return;
    }
    if (shared_.over.load(std::memory_order_relaxed)) return;
    ++nodes_;
    if (++pending_ == 1 << 14) flush();
    const std::size_t n = dl_.cells;
    if (pos == n) {
      leaf(s);
      return;
    }
    for (int take = 0; take < 2; ++take) {
      if (pos == 0 && fix_first_ && take == 0) continue;
      const int c2 = count + take;
      if (c2 > k_ || c2 + static_cast<int>(n - pos - 1) < k_) continue;
      const Mask s2 = take ? s | bit(pos) : s;
      bool dead = false;
      for (Mask m : dl_.at[pos])
        if (!(s2 & m)) {
          dead = true;
          break;
        }
      if (!dead) visit(pos + 1, s2, c2);
    }
  }

  void leaf(Mask s) {
    std::vector<Point> base;
    for (Mask r = s; r; r &= r - 1) base.push_back(domain_.cell(static_cast<std::size_t>(std::countr_zero(r))));
    const PeriodicPattern pattern(domain_.basis(), base);
    if (verify_lpds(pattern, {.allow_lift = false}).valid()) found_.push_back(period_normal_form(pattern));
  }

  void flush() {
    const std::uint64_t now = shared_.nodes.fetch_add(pending_) + pending_;
    pending_ = 0;
    if (shared_.budget && now > *shared_.budget) shared_.over = true;
  }

  const Domain& domain_;
  const Deadlines& dl_;
  int k_;
  bool fix_first_;
  Shared& shared_;
  std::size_t split_ = 0;
  std::vector<State>* out_ = nullptr;
  std::uint64_t nodes_ = 0;
  std::uint64_t pending_ = 0;
  std::vector<PeriodicPattern> found_;
};

void sort_unique(std::vector<PeriodicPattern>& v) {
  std::sort(v.begin(), v.end(), pattern_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Domain checked_domain(const LatticeBasis& basis, bool allow_large, std::int64_t limit) {
  const std::int64_t det = std::abs(basis.det());
  if (det > limit && !allow_large)
    throw Error("|det| = " + std::to_string(det) + " exceeds the limit of " + std::to_string(limit));
  const Domain d(basis);
  if (d.cell_count() > 64) throw Error("fundamental domain exceeds 64 cells");
  return d;
}

}  // namespace

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::optimum_found: return "optimum";
    case SearchStatus::infeasible: return "infeasible";
    case SearchStatus::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

PeriodicPattern period_normal_form(const PeriodicPattern& pattern) {
  const LatticeBasis hermite = pattern.domain().basis();
  std::optional<PeriodicPattern> best;
  for (const Point& p : pattern.base()) {
    PeriodicPattern moved = translate(PeriodicPattern(hermite, pattern.base()), -p);
    if (!best || moved.base() < best->base()) best = std::move(moved);
  }
  return best ? *best : PeriodicPattern(hermite, {});
}

bool pattern_less(const PeriodicPattern& a, const PeriodicPattern& b) {
  const auto key = [](const PeriodicPattern& p) {
    return std::tie(p.basis().u, p.basis().v);
  };
  if (key(a) != key(b)) return key(a) < key(b);
  return a.base() < b.base();
}

SearchResult minimum_lpds(const SearchConfig& config) {
  const Domain domain = checked_domain(config.basis, config.allow_large, 64);
  const auto n = static_cast<int>(domain.cell_count());
  const int max_k = std::min(n, config.max_cardinality.value_or(n));
  const Deadlines dl = deadlines(domain);
  Shared shared;
  shared.budget = config.node_budget;
  const std::size_t split = std::min<std::size_t>(domain.cell_count(), 6);

  SearchResult result;
  for (int k = 0; k <= max_k; ++k) {
    // A loop-free perfect matching on the quotient needs an even count.
    if (k % 2 != 0) continue;
    const bool fix_first = config.symmetry_reduction && k > 0;
    std::vector<Explorer::State> tasks;
    Explorer prefix(domain, dl, k, fix_first, shared);
    prefix.run({0, 0, 0}, split, &tasks);
    std::uint64_t nodes = prefix.nodes();

    std::vector<std::uint64_t> counts(tasks.size());
    std::vector<std::vector<PeriodicPattern>> found(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
        Explorer e(domain, dl, k, fix_first, shared);
        e.run(tasks[t]);
        counts[t] = e.nodes();
        found[t] = std::move(e.found());
      }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < config.workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (std::size_t t = 0; t < tasks.size(); ++t) {
      nodes += counts[t];
      for (auto& p : found[t]) result.optima.push_back(std::move(p));
    }
    result.nodes += nodes;
    if (shared.over) {
      result.status = SearchStatus::budget_exceeded;
      result.optima.clear();
      result.reason = "node budget exceeded while trying " + std::to_string(k) + " points";
      return result;
    }
    if (!result.optima.empty()) {
      sort_unique(result.optima);
      result.status = SearchStatus::optimum_found;
      result.min_cardinality = k;
      result.min_density = Rational(k, n);
      return result;
    }
  }
  result.status = SearchStatus::infeasible;
  result.reason = "no LPDS with at most " + std::to_string(max_k) + " of " + std::to_string(n) +
                  " cells at this period; odd counts admit no loop-free perfect matching";
  return result;
}

SearchResult brute_force_oracle(const LatticeBasis& basis) {
  const Domain domain = checked_domain(basis, false, 16);
  const std::size_t n = domain.cell_count();
  SearchResult result;
  int best = static_cast<int>(n) + 1;
  for (Mask s = 0; s < bit(n); ++s) {
    ++result.nodes;
    const int k = std::popcount(s);
    std::vector<Point> base;
    for (std::size_t i = 0; i < n; ++i)
      if (s & bit(i)) base.push_back(domain.cell(i));
    const PeriodicPattern pattern(domain.basis(), base);
    if (!verify_lpds(pattern, {.allow_lift = false}).valid()) continue;
    if (k > best) continue;
    if (k < best) {
      best = k;
      result.optima.clear();
    }
    result.optima.push_back(period_normal_form(pattern));
  }
  if (result.optima.empty()) {
    result.status = SearchStatus::infeasible;
    result.reason = "no subset of the " + std::to_string(n) + " cells is an LPDS at this period";
    return result;
  }
  sort_unique(result.optima);
  result.status = SearchStatus::optimum_found;
  result.min_cardinality = best;
  result.min_density = Rational(best, static_cast<std::int64_t>(n));
  return result;
}

std::string format_result(const SearchResult& r) {
  std::ostringstream os;
  for (const auto& p : r.optima) os << serialize(p);
  if (r.status == SearchStatus::optimum_found) {
    os << "optimum k=" << *r.min_cardinality << " density=" << to_string(*r.min_density)
       << " patterns=" << r.optima.size() << " nodes=" << r.nodes << '\n';
  } else {
    os << to_string(r.status) << " nodes=" << r.nodes << " # " << r.reason << '\n';
  }
  return os.str();
}

}  // namespace lpds
