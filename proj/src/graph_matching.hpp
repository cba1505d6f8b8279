#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace lpds::detail {

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

/// Maximum-cardinality matching on a general graph. Returns mate[v] or
/// kUnmatched per vertex.
std::vector<std::size_t> maximum_matching(std::size_t vertex_count,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Whether some matching covers every vertex flagged in `required`. Uses the
/// doubled-graph reduction: optional vertices are joined to their copies.
bool has_covering_matching(std::size_t vertex_count,
                           const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                           const std::vector<bool>& required);

}  // namespace lpds::detail
