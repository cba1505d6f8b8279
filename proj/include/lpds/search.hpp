#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpds/pattern.hpp"
#include "lpds/rational.hpp"

namespace lpds {

struct SearchConfig {
  LatticeBasis basis;
  std::optional<int> max_cardinality;
  /// Fix the first cell of the domain in S (every pattern has such a translate).
  bool symmetry_reduction = true;
  std::optional<std::uint64_t> node_budget;
  int workers = 1;
  /// Lift the |det| <= 64 guard. Domains still must fit 64 cells.
  bool allow_large = false;
};

enum class SearchStatus { optimum_found, infeasible, budget_exceeded };

std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::infeasible;
  std::optional<int> min_cardinality;
  std::optional<Rational> min_density;
  /// Distinct up to translation, each in period_normal_form, sorted.
  std::vector<PeriodicPattern> optima;
  std::uint64_t nodes = 0;
  std::string reason;
};

/// The least translate of the pattern over the Hermite basis of its own
/// period. Unlike translation_normal_form the period is kept.
PeriodicPattern period_normal_form(const PeriodicPattern& pattern);

/// Total order on patterns: basis, then base points.
bool pattern_less(const PeriodicPattern& a, const PeriodicPattern& b);

/// Minimum-cardinality LPDS whose period contains the configured lattice,
/// with the pairing realised at that lattice. Iterative deepening over
/// even cardinalities, row-major DFS with domination and locating deadlines.
SearchResult minimum_lpds(const SearchConfig& config);

/// Every subset of the fundamental domain through verify_lpds; |det| <= 16.
SearchResult brute_force_oracle(const LatticeBasis& basis);

/// Optima in the pattern text format, then
/// `optimum k=<n> density=<p>/<q> patterns=<m> nodes=<n>`.
std::string format_result(const SearchResult& result);

}  // namespace lpds
