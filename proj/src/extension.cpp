#include "mbook/extension.hpp"

#include <algorithm>

#include "mbook/error.hpp"
#include "mbook/fixtures.hpp"

namespace mbook {

BlockDrawing reverse_block(const BlockDrawing& block) {
  return {std::vector<Vertex>(block.order.rbegin(), block.order.rend()),
          block.coloring};
}

namespace {

// Collects (edge, page) pairs into page lists and builds the embedding.
BookEmbedding assemble(int n, std::vector<Vertex> order,
                       const std::vector<std::pair<Edge, Page>>& colored,
                       int pages) {
  std::vector<Edge> edges;
  std::vector<std::vector<Edge>> page_lists(pages);
  edges.reserve(colored.size());
  for (const auto& [e, p] : colored) {
    edges.push_back(e);
    page_lists[p - 1].push_back(e);
  }
  return embedding_from_pages(Graph(n, std::move(edges)),
                              CyclicLayout(std::move(order)), page_lists);
}

std::vector<std::pair<Page, Page>> separated_pairs(const SeedReport& report,
                                                   int pages) {
  std::vector<Page> unused;
  for (Page p = 1; p <= pages; ++p)
    if (!(report.intra_pages & page_bit(p))) unused.push_back(p);
  std::vector<std::pair<Page, Page>> out;
  for (std::size_t a = 0; a < unused.size(); ++a) {
    for (std::size_t b = a + 1; b < unused.size(); ++b) {
      const PageSet pair = page_bit(unused[a]) | page_bit(unused[b]);
      if ((report.before_pages & pair) != pair &&
          (report.after_pages & pair) != pair)
        out.emplace_back(unused[a], unused[b]);
    }
  }
  return out;
}

struct Attempt {
  std::optional<ExtensionResult> result;
  ValidityReport report;
};

Attempt build(const BookEmbedding& embedding, const BlockStructure& blocks,
              ProductShape shape, const ExtensionPlan& plan) {
  const int h = shape.h;
  const int s = shape.s;
  const int r = plan.r;
  const int seed = plan.seed;
  const ProductNumbering old_num{h, s};
  const ProductNumbering new_num{h, s + r};

  // Old block b != seed sits (b - seed) mod s places after the seed.
  auto new_block = [&](int b) {
    return b == seed ? 1 : r + 1 + (b - seed + s) % s;
  };
  auto relabel = [&](Vertex v, int block) {
    return new_num.vertex(old_num.h_index(v), block);
  };

  std::vector<Vertex> order;
  order.reserve(new_num.order());
  for (int c = 0; c <= r; ++c) {
    const std::vector<Vertex>& seed_order = blocks.block(seed);
    if (plan.copies[c]) {
      for (Vertex v : seed_order) order.push_back(relabel(v, c + 1));
    } else {
      for (auto it = seed_order.rbegin(); it != seed_order.rend(); ++it)
        order.push_back(relabel(*it, c + 1));
    }
  }
  for (int offset = 1; offset < s; ++offset) {
    const int b = (seed - 1 + offset) % s + 1;
    for (Vertex v : blocks.block(b)) order.push_back(relabel(v, new_block(b)));
  }

  const int successor = blocks.successor(seed);
  std::vector<std::pair<Edge, Page>> colored;
  const Graph& g = embedding.graph();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Edge& e = g.edge(i);
    const Page p = embedding.page_of(i);
    const int bu = old_num.block_of(e.u);
    const int bv = old_num.block_of(e.v);
    if (bu == seed && bv == seed) {
      for (int c = 1; c <= r + 1; ++c)
        colored.emplace_back(make_edge(relabel(e.u, c), relabel(e.v, c)), p);
      continue;
    }
    // The seed endpoint of the after-matching moves to the last copy; the
    // before-matching stays on the first copy.
    auto target = [&](Vertex v, int own, int other) {
      if (own != seed) return relabel(v, new_block(own));
      return relabel(v, other == successor ? r + 1 : 1);
    };
    colored.emplace_back(make_edge(target(e.u, bu, bv), target(e.v, bv, bu)), p);
  }
  for (int m = 1; m <= r; ++m) {
    const bool first_page = (m % 2 == 1) == (plan.phase == 1);
    const Page p = first_page ? plan.unused.first : plan.unused.second;
    for (int i = 1; i <= h; ++i)
      colored.emplace_back(make_edge(new_num.vertex(i, m), new_num.vertex(i, m + 1)), p);
  }

  BookEmbedding out = assemble(new_num.order(), std::move(order), colored,
                               embedding.pages());
  Attempt attempt;
  attempt.report = verify(out);
  if (!attempt.report.valid) return attempt;
  const ProductShape new_shape{h, s + r, shape.t};
  if (!is_extensible(out, h, s + r, shape.t).extensible) return attempt;

  ExtensionResult result{std::move(out), new_shape, plan, {}};
  for (Vertex v = 1; v <= old_num.order(); ++v)
    result.renumbering[v] = relabel(v, new_block(old_num.block_of(v)));
  attempt.result = std::move(result);
  return attempt;
}

}  // namespace

ExtensionResult extend(const BookEmbedding& embedding, ProductShape shape,
                       int seed, int r) {
  if (r <= 0 || r % 2 != 0) {
    throw Error(ErrorCode::bad_replication,
                "r must be a positive even integer, got " + std::to_string(r));
  }
  const ExtensibilityVerdict verdict =
      is_extensible(embedding, shape.h, shape.s, shape.t);
  if (!verdict.extensible) {
    throw Error(ErrorCode::not_extensible, "input is not extensible: " + verdict.reason);
  }
  if (std::find(verdict.seeds.begin(), verdict.seeds.end(), seed) ==
      verdict.seeds.end()) {
    throw Error(ErrorCode::not_a_seed,
                "block " + std::to_string(seed) + " is not a seed");
  }
  const auto blocks =
      std::get<BlockStructure>(detect_blocks(embedding, shape.h, shape.s));
  const SeedReport report = seed_report(embedding, blocks, shape.t)[seed - 1];

  ExtensionPlan plan;
  plan.seed = seed;
  plan.r = r;
  for (int c = 0; c <= r; ++c) plan.copies.push_back(c % 2 == 0);

  std::string failures;
  for (const auto& pair : separated_pairs(report, embedding.pages())) {
    plan.unused = pair;
    for (int phase : {1, 2}) {
      plan.phase = phase;
      Attempt attempt = build(embedding, blocks, shape, plan);
      if (attempt.result) return std::move(*attempt.result);
      failures += "\n  pages {" + std::to_string(pair.first) + "," +
                  std::to_string(pair.second) + "} phase " +
                  std::to_string(phase) + ":";
      if (attempt.report.violations.empty()) failures += " output not extensible";
      for (const Violation& v : attempt.report.violations)
        failures += "\n    " + describe(v);
    }
  }
  throw Error(ErrorCode::construction_failed,
              "no alternation phase yields a valid extension of seed " +
                  std::to_string(seed) + ":" + failures);
}

int lowest_seed(const BookEmbedding& embedding, ProductShape shape) {
  const ExtensibilityVerdict verdict =
      is_extensible(embedding, shape.h, shape.s, shape.t);
  if (!verdict.extensible) {
    throw Error(ErrorCode::not_extensible, "input is not extensible: " + verdict.reason);
  }
  return verdict.seeds.front();
}

BookEmbedding swap_factors(const BookEmbedding& embedding, int a, int b) {
  if (embedding.graph().order() != a * b) {
    throw Error(ErrorCode::malformed_input, "vertex count is not a*b");
  }
  const ProductNumbering from{a, b};
  const ProductNumbering to{b, a};
  auto map = [&](Vertex v) { return to.vertex(from.block_of(v), from.h_index(v)); };

  std::vector<Vertex> order;
  for (Vertex v : embedding.layout().order()) order.push_back(map(v));
  std::vector<std::pair<Edge, Page>> colored;
  const Graph& g = embedding.graph();
  for (std::size_t i = 0; i < g.size(); ++i)
    colored.emplace_back(make_edge(map(g.edge(i).u), map(g.edge(i).v)),
                         embedding.page_of(i));
  return assemble(a * b, std::move(order), colored, embedding.pages());
}

BookEmbedding certify_family(int m, int n) {
  if (m != 3 && m != 5) {
    throw Error(ErrorCode::precondition,
                "certified families exist for m = 3 and m = 5 only");
  }
  if (n < 3) {
    throw Error(ErrorCode::invalid_order, "n must be at least 3");
  }
  if (n % 2 == 0) {
    throw Error(ErrorCode::precondition,
                "even n is not covered by seed replication");
  }
  const BookEmbedding base = m == 3 ? lemma1_embedding() : lemma2_embedding();
  if (n == m) return base;
  if (n < m) return swap_factors(certify_family(n, m), n, m);
  const ProductShape shape{m, m, 2};
  return extend(base, shape, lowest_seed(base, shape), n - m).embedding;
}

}  // namespace mbook
