#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mbook/graph.hpp"
#include "mbook/layout.hpp"

namespace mbook {

using Page = int;  // 1..k

inline constexpr int kMaxPages = 32;

// Set of pages as a bitmask; bit p - 1 stands for page p.
using PageSet = std::uint32_t;

inline PageSet page_bit(Page p) { return PageSet{1} << (p - 1); }
std::vector<Page> pages_in(PageSet set);

// Page assignment aligned with Graph::edges(): assignment[i] is the page of
// edge i.
struct PageColoring {
  int pages = 0;
  std::vector<Page> assignment;

  bool operator==(const PageColoring&) const = default;
};

// Well-formed graph + layout + coloring. Validity is a separate verdict
// computed by verify().
class BookEmbedding {
 public:
  BookEmbedding(Graph graph, CyclicLayout layout, PageColoring coloring);

  const Graph& graph() const { return graph_; }
  const CyclicLayout& layout() const { return layout_; }
  const PageColoring& coloring() const { return coloring_; }
  int pages() const { return coloring_.pages; }
  Page page_of(std::size_t edge_index) const {
    return coloring_.assignment[edge_index];
  }
  Page page_of(Edge e) const;

  // Edges of page p in canonical edge order.
  std::vector<Edge> page_edges(Page p) const;

  bool operator==(const BookEmbedding&) const = default;

 private:
  Graph graph_;
  CyclicLayout layout_;
  PageColoring coloring_;
};

// Builds an embedding from explicit page lists (page i + 1 = pages[i]).
// Every listed edge must be an edge of `graph` and every edge of `graph`
// must be listed exactly once.
BookEmbedding embedding_from_pages(Graph graph, CyclicLayout layout,
                                   const std::vector<std::vector<Edge>>& pages);

enum class ClashKind { adjacent, crossing };

struct Violation {
  ClashKind kind;
  Edge first;
  Edge second;
  Page page;
  Vertex shared = 0;  // common endpoint for adjacent clashes

  bool operator==(const Violation&) const = default;
};

struct ValidityReport {
  bool valid = false;
  int pages = 0;
  std::vector<Violation> violations;  // every clashing pair, in edge order
  std::vector<Page> empty_pages;      // pages of 1..k with no edge
};

ValidityReport verify(const BookEmbedding& embedding);

std::string describe(const Violation& v);

// ---------------------------------------------------------------------------
// En bloc structure of an embedding of H x C_s under ProductNumbering.

struct BlockStructure {
  int h = 0;
  int s = 0;
  // blocks[j - 1] lists block j's vertices in counter-clockwise order.
  // Blocks appear on the circle in the order 1, 2, ..., s.
  std::vector<std::vector<Vertex>> blocks;

  const std::vector<Vertex>& block(int j) const { return blocks[j - 1]; }
  int predecessor(int j) const { return j == 1 ? s : j - 1; }
  int successor(int j) const { return j == s ? 1 : j + 1; }
};

enum class EnBlocFailure { block_not_contiguous, blocks_out_of_order };

struct NotEnBloc {
  EnBlocFailure failure;
  int block = 0;       // offending block index
  Vertex witness = 0;  // a vertex where the violation is observed
  std::string message;
};

using BlockDetection = std::variant<BlockStructure, NotEnBloc>;

// Throws malformed_input when the graph does not have h * s vertices.
BlockDetection detect_blocks(const BookEmbedding& embedding, int h, int s);

struct BoundaryMatchings {
  std::vector<Edge> before;  // block j to its predecessor
  std::vector<Edge> after;   // block j to its successor
};

// Matching edges are listed in the counter-clockwise order of their block-j
// endpoints.
BoundaryMatchings boundary_matchings(const BookEmbedding& embedding,
                                     const BlockStructure& blocks, int j);

// Edges of the embedding's graph with both endpoints in block j.
std::vector<Edge> intra_block_edges(const BookEmbedding& embedding,
                                    const BlockStructure& blocks, int j);

struct SeedReport {
  int block = 0;
  std::vector<Vertex> order;
  PageSet intra_pages = 0;
  PageSet before_pages = 0;
  PageSet after_pages = 0;
  bool verdict_a = false;
  bool verdict_b = false;
  bool is_seed = false;
  // Lowest separated pair of unused pages; set whenever verdict_b holds.
  std::optional<std::pair<Page, Page>> separated_pair;
  // For the lowest pair of unused pages: whether each matching carries both.
  bool before_mixes_unused = false;
  bool after_mixes_unused = false;
  // True when the block used fewer than t + 1 pages and verdict_b was
  // decided over several candidate pairs.
  bool multiple_candidate_pairs = false;
};

// One report per block. Throws precondition unless the embedding has
// exactly t + 3 pages.
std::vector<SeedReport> seed_report(const BookEmbedding& embedding,
                                    const BlockStructure& blocks, int t);

struct ExtensibilityVerdict {
  bool extensible = false;
  bool valid = false;
  bool page_count_ok = false;
  bool en_bloc = false;
  std::vector<int> seeds;
  std::string reason;  // first failed conjunct, empty when extensible
};

ExtensibilityVerdict is_extensible(const BookEmbedding& embedding, int h, int s,
                                   int t);

}  // namespace mbook
