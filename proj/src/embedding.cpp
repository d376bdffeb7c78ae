#include "mbook/embedding.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "mbook/error.hpp"

namespace mbook {

std::vector<Page> pages_in(PageSet set) {
  std::vector<Page> out;
  for (Page p = 1; set != 0; ++p, set >>= 1)
    if (set & 1u) out.push_back(p);
  return out;
}

BookEmbedding::BookEmbedding(Graph graph, CyclicLayout layout,
                             PageColoring coloring)
    : graph_(std::move(graph)),
      layout_(std::move(layout)),
      coloring_(std::move(coloring)) {
  if (layout_.size() != graph_.order()) {
    throw Error(ErrorCode::malformed_input,
                "layout has " + std::to_string(layout_.size()) +
                    " vertices, graph has " + std::to_string(graph_.order()));
  }
  if (coloring_.assignment.size() != graph_.size()) {
    throw Error(ErrorCode::malformed_input,
                "coloring covers " + std::to_string(coloring_.assignment.size()) +
                    " edges, graph has " + std::to_string(graph_.size()));
  }
  if (coloring_.pages < 0 || coloring_.pages > kMaxPages) {
    throw Error(ErrorCode::malformed_input,
                "page count " + std::to_string(coloring_.pages) +
                    " outside 0.." + std::to_string(kMaxPages));
  }
  for (std::size_t i = 0; i < graph_.size(); ++i) {
    const Page p = coloring_.assignment[i];
    if (p < 1 || p > coloring_.pages) {
      const Edge& e = graph_.edge(i);
      throw Error(ErrorCode::malformed_input,
                  "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                      " assigned to page " + std::to_string(p) +
                      " outside 1.." + std::to_string(coloring_.pages));
    }
  }
}

Page BookEmbedding::page_of(Edge e) const {
  auto idx = graph_.edge_index(e);
  if (!idx) {
    throw Error(ErrorCode::malformed_input,
                "no edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  return coloring_.assignment[*idx];
}

std::vector<Edge> BookEmbedding::page_edges(Page p) const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < graph_.size(); ++i)
    if (coloring_.assignment[i] == p) out.push_back(graph_.edge(i));
  return out;
}

BookEmbedding embedding_from_pages(Graph graph, CyclicLayout layout,
                                   const std::vector<std::vector<Edge>>& pages) {
  PageColoring coloring{static_cast<int>(pages.size()),
                        std::vector<Page>(graph.size(), 0)};
  for (std::size_t p = 0; p < pages.size(); ++p) {
    for (const Edge& raw : pages[p]) {
      auto idx = graph.edge_index(raw);
      if (!idx) {
        throw Error(ErrorCode::malformed_input,
                    "page " + std::to_string(p + 1) + " lists " +
                        std::to_string(raw.u) + "-" + std::to_string(raw.v) +
                        ", which is not an edge of the graph");
      }
      if (coloring.assignment[*idx] != 0) {
        throw Error(ErrorCode::malformed_input,
                    "edge " + std::to_string(raw.u) + "-" +
                        std::to_string(raw.v) + " listed on two pages");
      }
      coloring.assignment[*idx] = static_cast<Page>(p + 1);
    }
  }
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (coloring.assignment[i] == 0) {
      const Edge& e = graph.edge(i);
      throw Error(ErrorCode::malformed_input,
                  "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                      " is on no page");
    }
  }
  return BookEmbedding(std::move(graph), std::move(layout), std::move(coloring));
}

ValidityReport verify(const BookEmbedding& embedding) {
  const Graph& g = embedding.graph();
  const CyclicLayout& layout = embedding.layout();
  ValidityReport report;
  report.pages = embedding.pages();

  PageSet used = 0;
  for (std::size_t i = 0; i < g.size(); ++i) used |= page_bit(embedding.page_of(i));
  for (Page p = 1; p <= report.pages; ++p)
    if (!(used & page_bit(p))) report.empty_pages.push_back(p);

  for (std::size_t i = 0; i < g.size(); ++i) {
    const Edge& e = g.edge(i);
    const Page pe = embedding.page_of(i);
    for (std::size_t k = i + 1; k < g.size(); ++k) {
      if (embedding.page_of(k) != pe) continue;
      const Edge& f = g.edge(k);
      if (e.shares_vertex(f)) {
        const Vertex shared = f.touches(e.u) ? e.u : e.v;
        report.violations.push_back({ClashKind::adjacent, e, f, pe, shared});
      } else if (edges_conflict(layout, e, f)) {
        report.violations.push_back({ClashKind::crossing, e, f, pe, 0});
      }
    }
  }
  report.valid = report.violations.empty() && report.empty_pages.empty();
  return report;
}

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << (v.kind == ClashKind::adjacent ? "adjacent-clash" : "crossing-clash")
     << " page " << v.page << ": " << v.first.u << "-" << v.first.v << " / "
     << v.second.u << "-" << v.second.v;
  if (v.kind == ClashKind::adjacent) os << " at vertex " << v.shared;
  return os.str();
}

BlockDetection detect_blocks(const BookEmbedding& embedding, int h, int s) {
  const CyclicLayout& layout = embedding.layout();
  const int n = layout.size();
  if (h < 1 || s < 1 || n != h * s) {
    throw Error(ErrorCode::malformed_input,
                "graph has " + std::to_string(n) + " vertices, expected h*s = " +
                    std::to_string(h) + "*" + std::to_string(s));
  }
  const ProductNumbering num{h, s};
  auto block_at = [&](int p) { return num.block_of(layout.at(((p % n) + n) % n)); };

  BlockStructure out{h, s, std::vector<std::vector<Vertex>>(s)};
  if (s == 1) {
    out.blocks[0].assign(layout.order().begin(), layout.order().end());
    return out;
  }

  // Start reading at a block boundary so no run wraps around.
  int start = 0;
  while (start < n && block_at(start) == block_at(start - 1)) ++start;
  if (start == n) start = 0;  // unreachable for s > 1

  std::vector<int> run_blocks;
  std::vector<int> run_starts;
  std::vector<bool> seen(s + 1, false);
  for (int i = 0; i < n; ++i) {
    const int p = start + i;
    const int b = block_at(p);
    if (i == 0 || b != block_at(p - 1)) {
      if (seen[b]) {
        const Vertex w = layout.at(p % n);
        return NotEnBloc{EnBlocFailure::block_not_contiguous, b, w,
                         "block " + std::to_string(b) +
                             " is not contiguous (vertex " + std::to_string(w) +
                             " is separated from the rest of its block)"};
      }
      seen[b] = true;
      run_blocks.push_back(b);
      run_starts.push_back(p % n);
    }
    out.blocks[b - 1].push_back(layout.at(p % n));
  }

  // Runs must follow 1, 2, ..., s cyclically.
  for (std::size_t r = 0; r < run_blocks.size(); ++r) {
    const int b = run_blocks[r];
    const int next = run_blocks[(r + 1) % run_blocks.size()];
    if (next != b % s + 1) {
      const std::size_t bad = (r + 1) % run_blocks.size();
      const Vertex w = layout.at(run_starts[bad]);
      return NotEnBloc{EnBlocFailure::blocks_out_of_order, next, w,
                       "block " + std::to_string(next) + " follows block " +
                           std::to_string(b) +
                           " (expected block " + std::to_string(b % s + 1) +
                           ")"};
    }
  }
  return out;
}

namespace {

std::vector<Edge> matching_between(const BookEmbedding& embedding,
                                   const BlockStructure& blocks, int j,
                                   int other) {
  const ProductNumbering num{blocks.h, blocks.s};
  std::vector<Edge> out;
  for (Vertex v : blocks.block(j)) {
    const Vertex w = num.vertex(num.h_index(v), other);
    if (embedding.graph().has_edge(v, w)) out.push_back(make_edge(v, w));
  }
  return out;
}

PageSet pages_of(const BookEmbedding& embedding, const std::vector<Edge>& edges) {
  PageSet set = 0;
  for (const Edge& e : edges) set |= page_bit(embedding.page_of(e));
  return set;
}

}  // namespace

BoundaryMatchings boundary_matchings(const BookEmbedding& embedding,
                                     const BlockStructure& blocks, int j) {
  if (blocks.s < 3) {
    throw Error(ErrorCode::precondition,
                "boundary matchings need a cycle factor with s >= 3");
  }
  if (j < 1 || j > blocks.s) {
    throw Error(ErrorCode::precondition,
                "block index " + std::to_string(j) + " outside 1.." +
                    std::to_string(blocks.s));
  }
  return {matching_between(embedding, blocks, j, blocks.predecessor(j)),
          matching_between(embedding, blocks, j, blocks.successor(j))};
}

std::vector<Edge> intra_block_edges(const BookEmbedding& embedding,
                                    const BlockStructure& blocks, int j) {
  const ProductNumbering num{blocks.h, blocks.s};
  std::vector<Edge> out;
  for (const Edge& e : embedding.graph().edges())
    if (num.block_of(e.u) == j && num.block_of(e.v) == j) out.push_back(e);
  return out;
}

std::vector<SeedReport> seed_report(const BookEmbedding& embedding,
                                    const BlockStructure& blocks, int t) {
  const int k = embedding.pages();
  if (k != t + 3) {
    throw Error(ErrorCode::precondition,
                "seed conditions need t + 3 = " + std::to_string(t + 3) +
                    " pages, embedding has " + std::to_string(k));
  }
  const PageSet all = k == kMaxPages ? ~PageSet{0} : page_bit(k + 1) - 1;

  std::vector<SeedReport> reports;
  for (int j = 1; j <= blocks.s; ++j) {
    SeedReport r;
    r.block = j;
    r.order = blocks.block(j);
    r.intra_pages = pages_of(embedding, intra_block_edges(embedding, blocks, j));
    const BoundaryMatchings m = boundary_matchings(embedding, blocks, j);
    r.before_pages = pages_of(embedding, m.before);
    r.after_pages = pages_of(embedding, m.after);
    r.verdict_a = std::popcount(r.intra_pages) <= t + 1;

    const std::vector<Page> unused = pages_in(all & ~r.intra_pages);
    r.multiple_candidate_pairs = unused.size() > 2;
    bool first_pair = true;
    for (std::size_t a = 0; a < unused.size(); ++a) {
      for (std::size_t b = a + 1; b < unused.size(); ++b) {
        const PageSet pair = page_bit(unused[a]) | page_bit(unused[b]);
        const bool before_mixes = (r.before_pages & pair) == pair;
        const bool after_mixes = (r.after_pages & pair) == pair;
        if (first_pair) {
          r.before_mixes_unused = before_mixes;
          r.after_mixes_unused = after_mixes;
          first_pair = false;
        }
        if (!before_mixes && !after_mixes && !r.separated_pair) {
          r.separated_pair = std::pair{unused[a], unused[b]};
        }
      }
    }
    r.verdict_b = r.separated_pair.has_value();
    r.is_seed = r.verdict_a && r.verdict_b;
    reports.push_back(std::move(r));
  }
  return reports;
}

ExtensibilityVerdict is_extensible(const BookEmbedding& embedding, int h, int s,
                                   int t) {
  ExtensibilityVerdict v;
  v.valid = verify(embedding).valid;
  v.page_count_ok = embedding.pages() == t + 3;
  if (embedding.graph().order() != h * s) {
    v.reason = "graph does not have h*s vertices";
    return v;
  }
  const BlockDetection detection = detect_blocks(embedding, h, s);
  v.en_bloc = std::holds_alternative<BlockStructure>(detection);
  if (v.en_bloc && v.page_count_ok && s >= 3) {
    for (const SeedReport& r :
         seed_report(embedding, std::get<BlockStructure>(detection), t))
      if (r.is_seed) v.seeds.push_back(r.block);
  }
  if (!v.valid) {
    v.reason = "embedding is not a valid matching book embedding";
  } else if (!v.page_count_ok) {
    v.reason = "page count " + std::to_string(embedding.pages()) +
               " is not t + 3 = " + std::to_string(t + 3);
  } else if (!v.en_bloc) {
    v.reason = "layout is not en bloc: " + std::get<NotEnBloc>(detection).message;
  } else if (s < 3) {
    v.reason = "cycle factor needs s >= 3";
  } else if (v.seeds.empty()) {
    v.reason = "no block is a seed";
  }
  v.extensible = v.reason.empty();
  return v;
}

}  // namespace mbook
