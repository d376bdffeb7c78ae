#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mbook/error.hpp"
#include "mbook/fixtures.hpp"
#include "mbook/search.hpp"
#include "support.hpp"

using namespace mbook;

namespace {

const CyclicLayout kOmega1({1, 2, 3, 6, 5, 4, 7, 8, 9});

BookEmbedding recolor(const BookEmbedding& e, std::vector<std::pair<Edge, Page>> moves) {
  PageColoring c = e.coloring();
  for (auto [edge, page] : moves) c.assignment[*e.graph().edge_index(edge)] = page;
  return BookEmbedding(e.graph(), e.layout(), c);
}

BookEmbedding relayout(const BookEmbedding& e, const CyclicLayout& layout) {
  return BookEmbedding(e.graph(), layout, e.coloring());
}

const BlockStructure& blocks_of(const BlockDetection& d) {
  REQUIRE(std::holds_alternative<BlockStructure>(d));
  return std::get<BlockStructure>(d);
}

}  // namespace

TEST_CASE("edges_conflict on the fixture layout") {
  CHECK(edges_conflict(kOmega1, {1, 3}, {2, 8}));
  CHECK_FALSE(edges_conflict(kOmega1, {2, 8}, {4, 5}));
  CHECK_FALSE(edges_conflict(kOmega1, {1, 3}, {3, 6}));
  CHECK_FALSE(edges_conflict(kOmega1, {1, 2}, {1, 2}));
  CHECK_THROWS_AS(edges_conflict(kOmega1, {1, 10}, {2, 8}), Error);
  CHECK(oracle::crosses({1, 2, 3, 6, 5, 4, 7, 8, 9}, {1, 3}, {2, 8}));
  CHECK_FALSE(oracle::crosses({1, 2, 3, 6, 5, 4, 7, 8, 9}, {2, 8}, {4, 5}));
}

TEST_CASE("layout validation and canonical form") {
  CHECK_THROWS_AS(CyclicLayout({1, 2, 2}), Error);
  CHECK_THROWS_AS(CyclicLayout({1, 2, 4}), Error);
  const CyclicLayout l({3, 1, 4, 2, 5});
  CHECK(l.position(4) == 2);
  CHECK(l.rotated(1).at(0) == 1);
  CHECK(l.reflected().at(0) == 5);
  CHECK(l.reflected().at(1) == 2);
  const CyclicLayout c = l.canonical();
  CHECK(c.at(0) == 1);
  CHECK(c.canonical() == c);

  std::mt19937 rng(21);
  for (int round = 0; round < 100; ++round) {
    const CyclicLayout r = testing::random_layout(rng, 7);
    const CyclicLayout canon = r.canonical();
    CHECK(canon.canonical() == canon);
    CHECK(r.rotated(round % 7).canonical() == canon);
    CHECK(r.reflected().canonical() == canon);
    // Least over all 2n symmetric images.
    for (int shift = 0; shift < 7; ++shift) {
      const auto a = testing::order_of(r.rotated(shift));
      const auto b = testing::order_of(r.reflected().rotated(shift));
      const auto co = testing::order_of(canon);
      CHECK_FALSE(std::lexicographical_compare(a.begin(), a.end(), co.begin(), co.end()));
      CHECK_FALSE(std::lexicographical_compare(b.begin(), b.end(), co.begin(), co.end()));
    }
  }
}

TEST_CASE("conflict symmetry and invariance under rotation and reflection") {
  std::mt19937 rng(22);
  std::uniform_int_distribution<int> vertex(1, 8);
  for (int round = 0; round < 2000; ++round) {
    const CyclicLayout l = testing::random_layout(rng, 8);
    const int a = vertex(rng), b = vertex(rng), c = vertex(rng), d = vertex(rng);
    if (a == b || c == d) continue;
    const Edge e1 = make_edge(a, b), e2 = make_edge(c, d);
    const bool x = edges_conflict(l, e1, e2);
    CHECK(x == edges_conflict(l, e2, e1));
    CHECK(x == edges_conflict(l.rotated(round % 8), e1, e2));
    CHECK(x == edges_conflict(l.reflected(), e1, e2));
    CHECK(x == oracle::crosses(testing::order_of(l), {a, b}, {c, d}));
  }
}

TEST_CASE("reference fixtures verify") {
  for (const BookEmbedding& e : {lemma1_embedding(), lemma2_embedding()}) {
    const ValidityReport r = verify(e);
    CHECK(r.valid);
    CHECK(r.pages == 5);
    CHECK(r.violations.empty());
    CHECK(r.empty_pages.empty());
    CHECK(oracle::clashes(testing::edge_list(e.graph()), testing::order_of(e.layout()),
                          e.coloring().assignment)
              .empty());
  }
  CHECK(lemma1_embedding().layout() == kOmega1);
}

TEST_CASE("forcing 1-2 and 2-3 onto one page clashes at vertex 2") {
  // Page 4 is the only page missing at both vertex 1 and vertex 3, so every
  // clash that appears is at vertex 2.
  const BookEmbedding e = recolor(lemma1_embedding(), {{{1, 2}, 4}, {{2, 3}, 4}});
  const ValidityReport r = verify(e);
  CHECK_FALSE(r.valid);
  REQUIRE_FALSE(r.violations.empty());
  const Violation expected{ClashKind::adjacent, {1, 2}, {2, 3}, 4, 2};
  CHECK(std::find(r.violations.begin(), r.violations.end(), expected) != r.violations.end());
  for (const Violation& v : r.violations) {
    CHECK(v.kind == ClashKind::adjacent);
    CHECK(v.shared == 2);
  }
  CHECK(describe(expected).find("vertex 2") != std::string::npos);

  // Only one of the two edges moved: a single clash at vertex 2 plus one at
  // vertex 3.
  const ValidityReport one = verify(recolor(lemma1_embedding(), {{{2, 3}, 1}}));
  CHECK(one.violations.size() == 2);
}

TEST_CASE("non-surjective coloring is invalid") {
  const Graph g = cycle(4);
  const BookEmbedding e(g, CyclicLayout::identity(4), PageColoring{3, {1, 2, 2, 1}});
  const ValidityReport r = verify(e);
  CHECK_FALSE(r.valid);
  CHECK(r.violations.empty());
  CHECK(r.empty_pages == std::vector<Page>{3});
}

TEST_CASE("malformed embeddings are rejected") {
  const Graph g = cycle(4);
  CHECK_THROWS_AS(BookEmbedding(g, CyclicLayout::identity(5), PageColoring{2, {1, 2, 1, 2}}),
                  Error);
  CHECK_THROWS_AS(BookEmbedding(g, CyclicLayout::identity(4), PageColoring{2, {1, 2, 1}}),
                  Error);
  CHECK_THROWS_AS(BookEmbedding(g, CyclicLayout::identity(4), PageColoring{2, {1, 2, 1, 3}}),
                  Error);
  CHECK_THROWS_AS(embedding_from_pages(g, CyclicLayout::identity(4), {{{1, 2}}, {{2, 3}}}),
                  Error);
}

TEST_CASE("verify agrees with the brute-force checker") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> pages(1, 4);
  int valid_seen = 0;
  for (int round = 0; round < 400; ++round) {
    const Graph g = testing::random_graph(rng, 8, 0.35);
    const CyclicLayout l = testing::random_layout(rng, g.order());
    const int k = pages(rng);
    PageColoring c = testing::random_coloring(rng, g.size(), k);
    // Mix in search outputs so valid embeddings are well represented.
    if (round % 2 == 0) {
      const SearchOutcome o = color_search(g, l, k);
      if (o.witness) c = o.witness->coloring();
    }
    const BookEmbedding e(g, l, c);
    const ValidityReport r = verify(e);
    const auto clashes =
        oracle::clashes(testing::edge_list(g), testing::order_of(l), c.assignment);
    std::set<Page> used(c.assignment.begin(), c.assignment.end());
    const bool oracle_valid = clashes.empty() && static_cast<int>(used.size()) == k;
    CHECK(r.valid == oracle_valid);
    REQUIRE(r.violations.size() == clashes.size());
    for (std::size_t i = 0; i < clashes.size(); ++i) {
      CHECK((r.violations[i].kind == ClashKind::adjacent) == clashes[i].adjacent);
      CHECK(r.violations[i].first == Edge{clashes[i].first.first, clashes[i].first.second});
      CHECK(r.violations[i].second == Edge{clashes[i].second.first, clashes[i].second.second});
    }
    if (r.valid) {
      ++valid_seen;
      CHECK(k >= max_degree(g));
    }
    // Verdict and page count do not depend on where the circle starts or
    // which way it is read.
    for (const CyclicLayout& image : {l.rotated(round % g.order()), l.reflected(), l.canonical()}) {
      const ValidityReport s = verify(relayout(e, image));
      CHECK(s.valid == r.valid);
      CHECK(s.pages == r.pages);
      CHECK(s.violations.size() == r.violations.size());
    }
  }
  CHECK(valid_seen > 50);
}

TEST_CASE("detect_blocks") {
  const BlockStructure b1 = blocks_of(detect_blocks(lemma1_embedding(), 3, 3));
  CHECK(b1.blocks == std::vector<std::vector<Vertex>>{{1, 2, 3}, {6, 5, 4}, {7, 8, 9}});
  CHECK(b1.predecessor(1) == 3);
  CHECK(b1.successor(3) == 1);

  const BlockStructure b2 = blocks_of(detect_blocks(lemma2_embedding(), 5, 5));
  CHECK(b2.blocks == std::vector<std::vector<Vertex>>{{1, 2, 3, 4, 5},
                                                      {10, 9, 8, 7, 6},
                                                      {11, 12, 13, 15, 14},
                                                      {19, 20, 16, 17, 18},
                                                      {23, 22, 21, 25, 24}});

  // Rotating the circle does not change which arc is block 1.
  const BookEmbedding rotated = relayout(lemma2_embedding(), lemma2_embedding().layout().rotated(7));
  CHECK(blocks_of(detect_blocks(rotated, 5, 5)).blocks == b2.blocks);

  // Interleaved fibers.
  const Graph g6(6, {{1, 2}, {2, 3}, {4, 5}, {5, 6}, {1, 4}, {2, 5}, {3, 6}});
  const BookEmbedding interleaved(g6, CyclicLayout({1, 4, 2, 5, 3, 6}),
                                  PageColoring{1, std::vector<Page>(7, 1)});
  const BlockDetection d = detect_blocks(interleaved, 3, 2);
  REQUIRE(std::holds_alternative<NotEnBloc>(d));
  CHECK(std::get<NotEnBloc>(d).failure == EnBlocFailure::block_not_contiguous);
  CHECK(std::get<NotEnBloc>(d).block == 1);

  // Contiguous blocks in the wrong cyclic order.
  const Graph c3c4 = cartesian_product(cycle(3), cycle(4));
  const BookEmbedding shuffled(c3c4, CyclicLayout({1, 2, 3, 7, 8, 9, 4, 5, 6, 10, 11, 12}),
                               PageColoring{1, std::vector<Page>(c3c4.size(), 1)});
  const BlockDetection d2 = detect_blocks(shuffled, 3, 4);
  REQUIRE(std::holds_alternative<NotEnBloc>(d2));
  CHECK(std::get<NotEnBloc>(d2).failure == EnBlocFailure::blocks_out_of_order);

  CHECK_THROWS_AS(detect_blocks(lemma1_embedding(), 3, 4), Error);
}

TEST_CASE("boundary matchings") {
  const BookEmbedding e = lemma1_embedding();
  const BlockStructure b = blocks_of(detect_blocks(e, 3, 3));
  const BoundaryMatchings m = boundary_matchings(e, b, 2);
  const std::set<Edge> before(m.before.begin(), m.before.end());
  const std::set<Edge> after(m.after.begin(), m.after.end());
  CHECK(before == std::set<Edge>{{1, 4}, {2, 5}, {3, 6}});
  CHECK(after == std::set<Edge>{{4, 7}, {5, 8}, {6, 9}});

  // Oracle: filter product edges by the fibers they join.
  const ProductNumbering pn{3, 3};
  std::set<Edge> filtered_before, filtered_after;
  for (const Edge& edge : e.graph().edges()) {
    const int bu = pn.block_of(edge.u), bv = pn.block_of(edge.v);
    if (std::min(bu, bv) == 1 && std::max(bu, bv) == 2) filtered_before.insert(edge);
    if (std::min(bu, bv) == 2 && std::max(bu, bv) == 3) filtered_after.insert(edge);
  }
  CHECK(before == filtered_before);
  CHECK(after == filtered_after);
  CHECK(intra_block_edges(e, b, 2).size() == 3);

  const BookEmbedding e2 = lemma2_embedding();
  const BlockStructure b2 = blocks_of(detect_blocks(e2, 5, 5));
  const BoundaryMatchings m2 = boundary_matchings(e2, b2, 3);
  CHECK(m2.before.size() == 5);
  CHECK(m2.after.size() == 5);
  std::set<Vertex> covered;
  for (const Edge& edge : m2.before) covered.insert(pn.block_of(edge.u) == 3 ? edge.u : edge.v);
  CHECK(covered.size() == 5);
}

TEST_CASE("seed classification of the reference fixtures") {
  const BookEmbedding e1 = lemma1_embedding();
  const auto r1 = seed_report(e1, blocks_of(detect_blocks(e1, 3, 3)), 2);
  REQUIRE(r1.size() == 3);
  for (const SeedReport& s : r1) {
    CHECK(s.verdict_a);
    CHECK(s.verdict_b);
    CHECK(s.is_seed);
  }

  const BookEmbedding e2 = lemma2_embedding();
  const auto r2 = seed_report(e2, blocks_of(detect_blocks(e2, 5, 5)), 2);
  REQUIRE(r2.size() == 5);
  for (const SeedReport& s : r2) {
    CHECK(s.is_seed == (s.verdict_a && s.verdict_b));
    if (s.block == 3) {
      CHECK(s.order == std::vector<Vertex>{11, 12, 13, 15, 14});
      CHECK_FALSE(s.verdict_a);
      CHECK_FALSE(s.is_seed);
      // purple, blue, red, black
      CHECK(pages_in(s.intra_pages) == std::vector<Page>{1, 2, 3, 5});
    } else {
      CHECK(s.is_seed);
    }
  }

  CHECK_THROWS_AS(seed_report(e1, blocks_of(detect_blocks(e1, 3, 3)), 3), Error);
}

TEST_CASE("gadget fails condition (b) in the before-matching") {
  const BookEmbedding g = figure3_gadget();
  const BlockStructure b = blocks_of(detect_blocks(g, 5, 3));
  const auto reports = seed_report(g, b, 2);
  const SeedReport& s = reports.front();
  CHECK(s.block == 1);
  CHECK(s.verdict_a);
  CHECK_FALSE(s.verdict_b);
  CHECK_FALSE(s.is_seed);
  CHECK(s.before_mixes_unused);
  CHECK_FALSE(s.after_mixes_unused);
  // Block colors r, b, r, g, b use three pages; black and purple are free.
  CHECK(pages_in(s.intra_pages) == std::vector<Page>{1, 3, 4});
  CHECK(pages_in(s.before_pages) == std::vector<Page>{2, 5});
  CHECK(pages_in(s.after_pages) == std::vector<Page>{3, 5});
}

TEST_CASE("is_extensible") {
  const ExtensibilityVerdict v1 = is_extensible(lemma1_embedding(), 3, 3, 2);
  CHECK(v1.extensible);
  CHECK(v1.seeds == std::vector<int>{1, 2, 3});
  CHECK(v1.reason.empty());

  const ExtensibilityVerdict v2 = is_extensible(lemma2_embedding(), 5, 5, 2);
  CHECK(v2.extensible);
  CHECK(v2.seeds == std::vector<int>{1, 2, 4, 5});

  const ExtensibilityVerdict bad =
      is_extensible(recolor(lemma1_embedding(), {{{1, 2}, 2}}), 3, 3, 2);
  CHECK_FALSE(bad.extensible);
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.reason.empty());

  CHECK_FALSE(is_extensible(figure3_gadget(), 5, 3, 2).extensible);
}
