#include "graph_matching.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace lpds::detail {

std::vector<std::size_t> maximum_matching(std::size_t vertex_count,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  using Vertex = boost::graph_traits<Graph>::vertex_descriptor;
  Graph g(vertex_count);
  for (const auto& [a, b] : edges) boost::add_edge(a, b, g);
  std::vector<Vertex> mate(vertex_count);
  boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
  std::vector<std::size_t> out(vertex_count, kUnmatched);
  const Vertex null = boost::graph_traits<Graph>::null_vertex();
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (mate[v] != null) out[v] = mate[v];
  return out;
}

bool has_covering_matching(std::size_t vertex_count,
                           const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                           const std::vector<bool>& required) {
  std::vector<std::pair<std::size_t, std::size_t>> doubled;
  doubled.reserve(2 * edges.size() + vertex_count);
  for (const auto& [a, b] : edges) {
    doubled.emplace_back(a, b);
    doubled.emplace_back(a + vertex_count, b + vertex_count);
  }
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (!required[v]) doubled.emplace_back(v, v + vertex_count);
  const auto mate = maximum_matching(2 * vertex_count, doubled);
  for (std::size_t v = 0; v < 2 * vertex_count; ++v)
    if (mate[v] == kUnmatched) return false;
  return true;
}

}  // namespace lpds::detail
