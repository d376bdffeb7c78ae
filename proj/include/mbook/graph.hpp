#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mbook {

// Vertices are 1-based so that fixture labels can be used verbatim.
using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  bool touches(Vertex x) const { return u == x || v == x; }
  bool shares_vertex(const Edge& other) const {
    return touches(other.u) || touches(other.v);
  }

  auto operator<=>(const Edge&) const = default;
};

// Returns the edge with the smaller endpoint first.
Edge make_edge(Vertex a, Vertex b);

// Simple undirected graph on vertices 1..n. Immutable once built; the edge
// list is kept sorted so two graphs compare equal iff they have the same
// vertex count and edge set.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  std::optional<std::size_t> edge_index(Edge e) const;
  bool has_edge(Vertex a, Vertex b) const;

  int degree(Vertex v) const { return degree_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degree_;                   // indexed by vertex, [0] unused
  std::vector<std::vector<Vertex>> adjacency_;  // sorted neighbor lists
};

// Vertex (i, j) of H x C_s, with i the H-vertex (1..h) and j the block
// (1..s), is numbered (j - 1) * h + i.
struct ProductNumbering {
  int h = 0;
  int s = 0;

  Vertex vertex(int i, int j) const { return (j - 1) * h + i; }
  int h_index(Vertex v) const { return (v - 1) % h + 1; }
  int block_of(Vertex v) const { return (v - 1) / h + 1; }
  int order() const { return h * s; }
};

Graph cycle(int n);
Graph complete(int n);

// Product with `g` as the row factor and `h` as the block factor: vertex
// (u, j) gets label (j - 1) * |g| + u.
Graph cartesian_product(const Graph& g, const Graph& h);

int max_degree(const Graph& g);
bool is_regular(const Graph& g);
bool is_bipartite(const Graph& g);

// Delta(g), raised to Delta(g) + 1 for regular nonbipartite graphs (a
// regular graph embeddable in Delta pages must be bipartite). Never
// attempts an exact chromatic index computation.
int mbt_lower_bound(const Graph& g);

}  // namespace mbook
