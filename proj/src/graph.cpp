#include "mbook/graph.hpp"

#include <algorithm>
#include <string>

#include "mbook/error.hpp"

namespace mbook {

Edge make_edge(Vertex a, Vertex b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw Error(ErrorCode::malformed_input, "negative vertex count");
  for (Edge& e : edges_) {
    if (e.u == e.v) {
      throw Error(ErrorCode::malformed_input,
                  "self-loop at vertex " + std::to_string(e.u));
    }
    e = make_edge(e.u, e.v);
    if (e.u < 1 || e.v > n) {
      throw Error(ErrorCode::malformed_input,
                  "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                      " has an endpoint outside 1.." + std::to_string(n));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw Error(ErrorCode::malformed_input,
                "duplicate edge " + std::to_string(dup->u) + "-" +
                    std::to_string(dup->v));
  }
  degree_.assign(n + 1, 0);
  adjacency_.assign(n + 1, {});
  for (const Edge& e : edges_) {
    ++degree_[e.u];
    ++degree_[e.v];
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

std::optional<std::size_t> Graph::edge_index(Edge e) const {
  e = make_edge(e.u, e.v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a == b) return false;
  return edge_index(make_edge(a, b)).has_value();
}

Graph cycle(int n) {
  if (n < 3) {
    throw Error(ErrorCode::invalid_order,
                "cycle needs at least 3 vertices, got " + std::to_string(n));
  }
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({v, v + 1});
  edges.push_back({1, n});
  return Graph(n, std::move(edges));
}

Graph complete(int n) {
  std::vector<Edge> edges;
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b) edges.push_back({a, b});
  return Graph(n, std::move(edges));
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  if (g.order() == 0 || h.order() == 0) {
    throw Error(ErrorCode::precondition, "cartesian product of an empty graph");
  }
  const ProductNumbering num{g.order(), h.order()};
  std::vector<Edge> edges;
  edges.reserve(g.order() * h.size() + h.order() * g.size());
  for (int j = 1; j <= h.order(); ++j)
    for (const Edge& e : g.edges())
      edges.push_back({num.vertex(e.u, j), num.vertex(e.v, j)});
  for (int i = 1; i <= g.order(); ++i)
    for (const Edge& e : h.edges())
      edges.push_back({num.vertex(i, e.u), num.vertex(i, e.v)});
  return Graph(num.order(), std::move(edges));
}

int max_degree(const Graph& g) {
  int best = 0;
  for (Vertex v = 1; v <= g.order(); ++v) best = std::max(best, g.degree(v));
  return best;
}

bool is_regular(const Graph& g) {
  for (Vertex v = 2; v <= g.order(); ++v)
    if (g.degree(v) != g.degree(1)) return false;
  return true;
}

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.order() + 1, -1);
  std::vector<Vertex> stack;
  for (Vertex root = 1; root <= g.order(); ++root) {
    if (side[root] != -1) continue;
    side[root] = 0;
    stack.push_back(root);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (side[w] == -1) {
          side[w] = 1 - side[v];
          stack.push_back(w);
        } else if (side[w] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

int mbt_lower_bound(const Graph& g) {
  const int delta = max_degree(g);
  if (g.size() > 0 && is_regular(g) && !is_bipartite(g)) return delta + 1;
  return delta;
}

}  // namespace mbook
