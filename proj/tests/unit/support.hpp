#pragma once

#include <random>
#include <vector>

#include "mbook/embedding.hpp"
#include "oracles.hpp"

namespace testing {

inline oracle::EdgeList edge_list(const mbook::Graph& g) {
  oracle::EdgeList out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

inline std::vector<int> order_of(const mbook::CyclicLayout& layout) {
  return {layout.order().begin(), layout.order().end()};
}

inline mbook::Graph graph_of(int n, const oracle::EdgeList& edges) {
  std::vector<mbook::Edge> out;
  for (auto [u, v] : edges) out.push_back(mbook::make_edge(u, v));
  return mbook::Graph(n, out);
}

// Random graph on 3..max_n vertices with at least one edge.
inline mbook::Graph random_graph(std::mt19937& rng, int max_n, double p) {
  std::uniform_int_distribution<int> size(3, max_n);
  while (true) {
    const int n = size(rng);
    auto edges = oracle::random_graph(rng, n, p);
    if (!edges.empty()) return graph_of(n, edges);
  }
}

inline mbook::CyclicLayout random_layout(std::mt19937& rng, int n) {
  return mbook::CyclicLayout(oracle::random_order(rng, n));
}

inline mbook::PageColoring random_coloring(std::mt19937& rng, std::size_t m, int k) {
  std::uniform_int_distribution<int> page(1, k);
  mbook::PageColoring c{k, {}};
  for (std::size_t i = 0; i < m; ++i) c.assignment.push_back(page(rng));
  return c;
}

}  // namespace testing
