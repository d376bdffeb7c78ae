#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mbook/embedding.hpp"

namespace mbook {

// One block's internal order together with the pages of its internal edges.
struct BlockDrawing {
  std::vector<Vertex> order;
  std::vector<std::pair<Edge, Page>> coloring;

  bool operator==(const BlockDrawing&) const = default;
};

// Reverses the vertex order; the coloring is attached to edges, so it is
// carried over unchanged.
BlockDrawing reverse_block(const BlockDrawing& block);

// H x C_s with t-regular H on h vertices.
struct ProductShape {
  int h = 0;
  int s = 0;
  int t = 0;
};

struct ExtensionPlan {
  int seed = 0;
  int r = 0;
  std::pair<Page, Page> unused;  // the two pages the seed leaves free
  int phase = 1;                 // 1: first inserted matching uses unused.first
  // Inserted block sequence: true = seed order, false = reversed order.
  std::vector<bool> copies;
};

struct ExtensionResult {
  BookEmbedding embedding;
  ProductShape shape;
  ExtensionPlan plan;
  std::map<Vertex, Vertex> renumbering;  // original vertex -> new vertex
};

// Replaces seed block `seed` by r + 1 alternating copies (seed order,
// reversed, ..., seed order) joined by straight matchings whose pages
// alternate between the two pages the seed leaves unused. Both alternation
// phases are tried; the first output that verifies and is extensible is
// returned. Blocks of the output are relabeled 1..s+r starting from the
// first copy of the seed.
ExtensionResult extend(const BookEmbedding& embedding, ProductShape shape,
                       int seed, int r);

// Lowest-index seed block of an extensible embedding; throws not_extensible.
int lowest_seed(const BookEmbedding& embedding, ProductShape shape);

// Verified 5-page embedding of C_m x C_n, m in {3, 5}, n >= 3 odd, obtained
// by seed replication from the C3 x C3 and C5 x C5 fixtures.
// For m = 5, n = 3 the C3 x C5 embedding is relabeled with the factors
// swapped.
BookEmbedding certify_family(int m, int n);

// Relabels an embedding of A x B (row factor of order a, block factor of
// order b) as an embedding of B x A.
BookEmbedding swap_factors(const BookEmbedding& embedding, int a, int b);

}  // namespace mbook
