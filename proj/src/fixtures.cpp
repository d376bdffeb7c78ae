#include "mbook/fixtures.hpp"

#include <algorithm>

#include "mbook/error.hpp"
#include "mbook/extension.hpp"

namespace mbook {

namespace {

using PageList = std::vector<std::vector<Edge>>;

const std::vector<Vertex> kLemma1Layout = {1, 2, 3, 6, 5, 4, 7, 8, 9};

const PageList kLemma1Pages = {
    {{1, 2}, {3, 9}, {5, 6}, {8, 7}},  // red
    {{1, 3}, {9, 6}, {8, 5}, {7, 4}},  // black
    {{2, 3}, {6, 4}, {1, 7}, {8, 9}},  // green
    {{2, 8}, {4, 5}},                  // blue
    {{3, 6}, {2, 5}, {1, 4}, {9, 7}},  // purple
};

const std::vector<Vertex> kLemma2Layout = {1,  2,  3,  4,  5,  10, 9,  8,  7,
                                           6,  11, 12, 13, 15, 14, 19, 20, 16,
                                           17, 18, 23, 22, 21, 25, 24};

const PageList kLemma2Pages = {
    // purple
    {{1, 2}, {3, 4}, {9, 14}, {8, 7}, {11, 15}, {12, 13}, {24, 19}, {25, 20},
     {21, 16}, {22, 17}, {23, 18}},
    // blue
    {{2, 3}, {1, 5}, {10, 9}, {7, 6}, {11, 12}, {13, 18}, {15, 20}, {14, 19},
     {16, 17}, {21, 22}, {23, 24}},
    // red
    {{5, 10}, {4, 9}, {3, 8}, {2, 7}, {1, 6}, {12, 17}, {13, 14}, {22, 23},
     {25, 21}},
    // green
    {{24, 25}, {1, 21}, {2, 22}, {3, 23}, {4, 5}, {10, 15}, {8, 13}, {7, 12},
     {6, 11}, {19, 18}, {20, 16}},
    // black
    {{4, 24}, {5, 25}, {10, 6}, {9, 8}, {11, 16}, {15, 14}, {19, 20},
     {18, 17}},
};

enum : Page { kRed = 1, kBlack = 2, kGreen = 3, kBlue = 4, kPurple = 5 };

}  // namespace

std::map<Page, std::string> lemma1_color_names() {
  return {{1, "red"}, {2, "black"}, {3, "green"}, {4, "blue"}, {5, "purple"}};
}

std::map<Page, std::string> lemma2_color_names() {
  return {{1, "purple"}, {2, "blue"}, {3, "red"}, {4, "green"}, {5, "black"}};
}

BookEmbedding lemma1_embedding() {
  return embedding_from_pages(cartesian_product(cycle(3), cycle(3)),
                              CyclicLayout(kLemma1Layout), kLemma1Pages);
}

BookEmbedding lemma2_embedding() {
  return embedding_from_pages(cartesian_product(cycle(5), cycle(5)),
                              CyclicLayout(kLemma2Layout), kLemma2Pages);
}

BookEmbedding figure3_gadget() {
  const ProductNumbering num{5, 3};
  const Graph g = cartesian_product(cycle(5), cycle(3));
  // Block 1 in natural order; blocks 2 and 3 reversed so that the
  // one-page parts of the boundary matchings nest.
  std::vector<Vertex> order;
  for (int i = 1; i <= 5; ++i) order.push_back(num.vertex(i, 1));
  for (int i = 5; i >= 1; --i) order.push_back(num.vertex(i, 2));
  for (int i = 5; i >= 1; --i) order.push_back(num.vertex(i, 3));
  const CyclicLayout layout(order);

  std::vector<Page> pages(g.size(), 0);
  auto set = [&](Vertex a, Vertex b, Page p) { pages[*g.edge_index(make_edge(a, b))] = p; };
  // Around the circle r, b, r, g, plus the inner chord 1-5 on b.
  set(1, 2, kRed);
  set(2, 3, kBlue);
  set(3, 4, kRed);
  set(4, 5, kGreen);
  set(1, 5, kBlue);
  const Page before[] = {kPurple, kBlack, kBlack, kBlack, kBlack};
  const Page after[] = {kGreen, kPurple, kPurple, kPurple, kPurple};
  for (int i = 1; i <= 5; ++i) {
    set(num.vertex(i, 1), num.vertex(i, 3), before[i - 1]);
    set(num.vertex(i, 1), num.vertex(i, 2), after[i - 1]);
  }
  // Greedy fill: lowest page that clashes with nothing placed so far,
  // falling back to the page with fewest clashes.
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (pages[i] != 0) continue;
    Page best = 1;
    int best_clashes = -1;
    for (Page p = 1; p <= 5; ++p) {
      int clashes = 0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (pages[k] != p) continue;
        if (g.edge(i).shares_vertex(g.edge(k)) ||
            edges_conflict(layout, g.edge(i), g.edge(k)))
          ++clashes;
      }
      if (best_clashes < 0 || clashes < best_clashes) {
        best = p;
        best_clashes = clashes;
      }
      if (clashes == 0) break;
    }
    pages[i] = best;
  }
  return BookEmbedding(g, layout, PageColoring{5, pages});
}

std::vector<std::string> fixture_names() {
  return {"lemma1-c3c3", "lemma2-c5c5", "figure3-gadget", "figure4-c3c5-derived"};
}

bool is_fixture_name(std::string_view name) {
  const auto names = fixture_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Fixture fixture(std::string_view name) {
  if (name == "lemma1-c3c3") {
    return {std::string(name),
            "hand-entered 5-page embedding of C3 x C3",
            lemma1_embedding(), lemma1_color_names(), 3, 3, 2};
  }
  if (name == "lemma2-c5c5") {
    return {std::string(name),
            "hand-entered 5-page embedding of C5 x C5",
            lemma2_embedding(), lemma2_color_names(), 5, 5, 2};
  }
  if (name == "figure3-gadget") {
    return {std::string(name),
            "block satisfying (a) but not (b); only block 1 and its boundary "
            "matchings are prescribed, not a valid embedding",
            figure3_gadget(), lemma1_color_names(), 5, 3, 2};
  }
  if (name == "figure4-c3c5-derived") {
    const BookEmbedding base = lemma1_embedding();
    const ProductShape shape{3, 3, 2};
    return {std::string(name),
            "C3 x C5 generated by replicating the lowest seed of lemma1-c3c3 "
            "with r = 2",
            extend(base, shape, lowest_seed(base, shape), 2).embedding,
            lemma1_color_names(), 3, 5, 2};
  }
  throw Error(ErrorCode::precondition, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace mbook
