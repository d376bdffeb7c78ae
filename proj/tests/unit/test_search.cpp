#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>
#include <unistd.h>

#include "mbook/cnf.hpp"
#include "mbook/error.hpp"
#include "mbook/fixtures.hpp"
#include "mbook/search.hpp"
#include "support.hpp"

using namespace mbook;

namespace {

const CyclicLayout kOmega1({1, 2, 3, 6, 5, 4, 7, 8, 9});

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("mbook_test_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

// Witness soundness, re-checked by both the library verifier and the
// brute-force oracle.
void check_witness(const BookEmbedding& w, int k) {
  CHECK(verify(w).valid);
  CHECK(w.pages() == k);
  CHECK(oracle::clashes(testing::edge_list(w.graph()), testing::order_of(w.layout()),
                        w.coloring().assignment)
            .empty());
  if (is_regular(w.graph()) && !is_bipartite(w.graph()))
    CHECK(w.pages() >= max_degree(w.graph()) + 1);
}

}  // namespace

TEST_CASE("color_search on the fixture layout") {
  const Graph g = cartesian_product(cycle(3), cycle(3));
  const SearchOutcome five = color_search(g, kOmega1, 5);
  REQUIRE(five.status == SearchStatus::found);
  REQUIRE(five.witness);
  check_witness(*five.witness, 5);
  CHECK(five.witness->layout() == kOmega1);

  CHECK(color_search(g, kOmega1, 4).status == SearchStatus::exhausted);
  SearchConfig no_shortcut;
  no_shortcut.capacity_prune = false;
  const SearchOutcome four = color_search(g, kOmega1, 4, no_shortcut);
  CHECK(four.status == SearchStatus::exhausted);
  CHECK(four.stats.capacity_prunes == 0);
  CHECK(four.stats.nodes > 0);
}

TEST_CASE("color_search small cases") {
  const SearchOutcome c4 = color_search(cycle(4), CyclicLayout::identity(4), 2);
  REQUIRE(c4.status == SearchStatus::found);
  check_witness(*c4.witness, 2);
  CHECK(color_search(cycle(5), CyclicLayout::identity(5), 2).status == SearchStatus::exhausted);
  CHECK(color_search(cycle(3), CyclicLayout::identity(3), 4).status == SearchStatus::exhausted);

  SearchConfig tiny;
  tiny.node_budget = 1;
  tiny.capacity_prune = false;
  const SearchOutcome cut =
      color_search(cartesian_product(cycle(3), cycle(3)), kOmega1, 4, tiny);
  CHECK(cut.status == SearchStatus::budget_exhausted);
  CHECK_FALSE(cut.witness);

  CHECK_THROWS_AS(color_search(cycle(4), CyclicLayout::identity(4), 0), Error);
  CHECK_THROWS_AS(color_search(cycle(4), CyclicLayout::identity(5), 2), Error);
  SearchConfig bad;
  bad.workers = 2;
  bad.checkpoint_path = temp_path("never");
  CHECK_THROWS_AS(color_search(cycle(4), CyclicLayout::identity(4), 2, bad), Error);
}

TEST_CASE("color_search agrees with generate-and-test") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> pages(1, 4);
  int tried = 0, found = 0;
  while (tried < 120) {
    const Graph g = testing::random_graph(rng, 8, 0.3);
    const int k = pages(rng);
    if (oracle::assignment_count(g.size(), k) > 2e5) continue;
    ++tried;
    const CyclicLayout l = testing::random_layout(rng, g.order());
    const SearchOutcome o = color_search(g, l, k);
    REQUIRE(o.status != SearchStatus::budget_exhausted);
    const bool expected = oracle::coloring_exists(testing::edge_list(g), testing::order_of(l), k);
    CHECK((o.status == SearchStatus::found) == expected);
    if (o.witness) {
      ++found;
      check_witness(*o.witness, k);
    }
  }
  CHECK(found > 20);
  CHECK(found < tried);
}

TEST_CASE("CNF satisfiability agrees with color_search") {
  std::mt19937 rng(32);
  std::uniform_int_distribution<int> pages(1, 4);
  for (int round = 0; round < 80; ++round) {
    const Graph g = testing::random_graph(rng, 8, 0.3);
    const int k = pages(rng);
    const CyclicLayout l = testing::random_layout(rng, g.order());
    const CnfDocument doc = export_cnf(g, l, k);
    oracle::Dpll solver(doc.to_dimacs());
    CHECK(solver.variable_count() == doc.variables);
    CHECK(solver.clause_count() == doc.clauses.size());
    const auto model = solver.solve();
    const SearchOutcome o = color_search(g, l, k);
    CHECK(model.has_value() == (o.status == SearchStatus::found));
    if (model) {
      const PageColoring c = decode_cnf_model(g, k, *model);
      CHECK(verify(BookEmbedding(g, l, c)).valid);
    }
  }
}

TEST_CASE("export_cnf examples") {
  const CnfDocument tri = export_cnf(cycle(3), CyclicLayout::identity(3), 3);
  CHECK(tri.variables == 9);
  // 3 at-least-one, 3 * 3 at-most-one, 3 used, 3 adjacent pairs * 3 pages.
  CHECK(tri.clauses.size() == 3 + 9 + 3 + 9);
  const auto tri_model = oracle::Dpll(tri.to_dimacs()).solve();
  REQUIRE(tri_model);
  CHECK(verify(BookEmbedding(cycle(3), CyclicLayout::identity(3),
                             decode_cnf_model(cycle(3), 3, *tri_model)))
            .valid);

  const Graph g = cartesian_product(cycle(3), cycle(3));
  CHECK_FALSE(oracle::Dpll(export_cnf(g, kOmega1, 4).to_dimacs()).solve());
  const auto five = oracle::Dpll(export_cnf(g, kOmega1, 5).to_dimacs()).solve();
  REQUIRE(five);
  CHECK(verify(BookEmbedding(g, kOmega1, decode_cnf_model(g, 5, *five))).valid);

  CHECK(cnf_variable(0, 1, 5) == 1);
  CHECK(cnf_variable(2, 3, 5) == 13);
  const std::string text = tri.to_dimacs();
  CHECK(text.find("p cnf 9 24\n") != std::string::npos);
  CHECK(text.rfind("c ", 0) == 0);
}

TEST_CASE("solver model parsing") {
  CHECK(parse_solver_model("s SATISFIABLE\nv 1 -2 3\nv -4 0\n") ==
        std::vector<int>{1, -2, 3, -4});
  CHECK(parse_solver_model("SAT\n1 -2 3 -4 0\n") == std::vector<int>{1, -2, 3, -4});
  CHECK_THROWS_AS(parse_solver_model("s UNSATISFIABLE\n"), Error);
  CHECK_THROWS_AS(parse_solver_model("UNSAT\n"), Error);
  CHECK_THROWS_AS(parse_solver_model("v 1 x 0\n"), Error);

  // Edge 0 on two pages.
  const Graph g = cycle(3);
  CHECK_THROWS_AS(decode_cnf_model(g, 3, std::vector<int>{1, 2, -3, -4, 5, -6, -7, -8, 9}),
                  Error);
  // Edge 2 on no page.
  CHECK_THROWS_AS(decode_cnf_model(g, 3, std::vector<int>{1, -2, -3, -4, 5, -6, -7, -8, -9}),
                  Error);
  const PageColoring c =
      decode_cnf_model(g, 3, std::vector<int>{1, -2, -3, -4, 5, -6, -7, -8, 9});
  CHECK(c.assignment == std::vector<Page>{1, 2, 3});
}

TEST_CASE("exact mbt") {
  CHECK(mbt_exact(cycle(3)) == 3);
  CHECK(mbt_exact(cycle(4)) == 2);
  CHECK(mbt_exact(cycle(5)) == 3);
  CHECK(mbt_exact(cycle(6)) == 2);
  CHECK(mbt_exact(cycle(7)) == 3);
  CHECK(mbt_exact(complete(4)) == 4);
  CHECK(mbt_exact(complete(5)) == 5);
  CHECK_THROWS_AS(mbt_exact(cycle(11)), Error);

  const MbtResult k4 = mbt_exact_search(complete(4));
  REQUIRE(k4.witness);
  check_witness(*k4.witness, 4);

  std::mt19937 rng(33);
  for (int round = 0; round < 25; ++round) {
    const Graph g = testing::random_graph(rng, 6, 0.5);
    const int mbt = mbt_exact(g);
    CHECK(mbt >= mbt_lower_bound(g));
    CHECK(mbt <= static_cast<int>(g.size()));
  }
}

TEST_CASE("all-layouts search") {
  const Graph g = cartesian_product(cycle(3), cycle(3));
  SearchConfig config;
  config.capacity_prune = false;
  const SearchOutcome four = layout_search(g, 4, config);
  CHECK(four.status == SearchStatus::exhausted);
  CHECK(four.stats.layouts == 20160);  // 8! / 2
  config.workers = 2;
  CHECK(layout_search(g, 4, config).status == SearchStatus::exhausted);
  const SearchOutcome five = layout_search(g, 5, config);
  REQUIRE(five.status == SearchStatus::found);
  check_witness(*five.witness, 5);
}

TEST_CASE("extensible en bloc search") {
  SearchConfig config;
  config.require_extensible = true;
  config.node_budget = 1'000'000;
  const SearchOutcome c3 = search_extensible(cycle(3), 3, 5, config);
  REQUIRE(c3.status == SearchStatus::found);
  check_witness(*c3.witness, 5);
  CHECK(c3.stats.nodes <= 1'000'000);
  CHECK(is_extensible(*c3.witness, 3, 3, 2).extensible);
  CHECK(std::holds_alternative<BlockStructure>(detect_blocks(*c3.witness, 3, 3)));

  config.workers = 2;
  const SearchOutcome par = search_extensible(cycle(3), 3, 5, config);
  REQUIRE(par.status == SearchStatus::found);
  CHECK(is_extensible(*par.witness, 3, 3, 2).extensible);

  // Plain en bloc search: no extensibility requirement.
  SearchConfig plain;
  const SearchOutcome any = search_extensible(cycle(3), 3, 5, plain);
  REQUIRE(any.status == SearchStatus::found);
  check_witness(*any.witness, 5);
  CHECK(search_extensible(cycle(3), 3, 4, plain).status == SearchStatus::exhausted);

  CHECK_THROWS_AS(search_extensible(cycle(4), 3, 5, config), Error);  // bipartite
  CHECK_THROWS_AS(search_extensible(cycle(3), 3, 6, config), Error);  // k != t + 3
  CHECK_THROWS_AS(search_extensible(cycle(3), 2, 5, config), Error);
  CHECK_THROWS_AS(search_extensible(cycle(9), 3, 5, config), Error);
}

TEST_CASE("checkpoint file round trip") {
  Checkpoint c;
  c.prefix = {0, 3, 1, 4};
  c.cursor = 2;
  c.stats.nodes = 1234;
  c.stats.seed_prunes = 7;
  c.config_hash = "00ff";
  const std::string path = temp_path("roundtrip.json");
  save_checkpoint(c, path);
  const Checkpoint back = load_checkpoint(path);
  CHECK(back.prefix == c.prefix);
  CHECK(back.cursor == c.cursor);
  CHECK(back.stats.same_counts(c.stats));
  CHECK(back.config_hash == c.config_hash);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_checkpoint(path), Error);
}

TEST_CASE("resumed search is bit-identical to an uninterrupted run") {
  SearchConfig config;
  config.require_extensible = true;
  const SearchOutcome straight = search_extensible(cycle(5), 5, 5, config);
  REQUIRE(straight.status == SearchStatus::found);
  CHECK(is_extensible(*straight.witness, 5, 5, 2).extensible);

  const std::string path = temp_path("resume.json");
  SearchConfig cut = config;
  cut.checkpoint_path = path;
  std::optional<Checkpoint> resume;
  SearchOutcome last;
  int segments = 0;
  for (std::uint64_t budget = 60'000;; budget += 60'000) {
    cut.node_budget = budget;
    last = search_extensible(cycle(5), 5, 5, cut, resume);
    ++segments;
    if (last.status != SearchStatus::budget_exhausted) break;
    CHECK(last.checkpoint_path == path);
    resume = load_checkpoint(path);
    CHECK(resume->stats.nodes == budget);
  }
  std::filesystem::remove(path);
  CHECK(segments > 3);
  CHECK(last.status == straight.status);
  CHECK(last.stats.same_counts(straight.stats));
  REQUIRE(last.witness);
  CHECK(*last.witness == *straight.witness);

  // A checkpoint from a different search is refused.
  CHECK_THROWS_AS(search_extensible(cycle(3), 3, 5, config, resume), Error);
}

TEST_CASE("periodic checkpoints and the C7 campaign stop point") {
  const std::string path = temp_path("c7.json");
  SearchConfig config;
  config.require_extensible = true;
  config.node_budget = 200'000;
  config.checkpoint_path = path;
  config.checkpoint_interval = 50'000;
  const SearchOutcome first = search_extensible(cycle(7), 7, 5, config);
  CHECK(first.status == SearchStatus::budget_exhausted);
  const Checkpoint at_stop = load_checkpoint(path);
  CHECK(at_stop.stats.nodes == 200'000);

  // Continue in two ways: once straight to 400k, once via a 300k stop.
  config.node_budget = 400'000;
  const SearchOutcome direct = search_extensible(cycle(7), 7, 5, config, at_stop);
  const Checkpoint direct_stop = load_checkpoint(path);
  config.node_budget = 300'000;
  search_extensible(cycle(7), 7, 5, config, at_stop);
  config.node_budget = 400'000;
  const SearchOutcome stepped =
      search_extensible(cycle(7), 7, 5, config, load_checkpoint(path));
  const Checkpoint stepped_stop = load_checkpoint(path);
  std::filesystem::remove(path);

  CHECK(direct.status == stepped.status);
  CHECK(direct.stats.same_counts(stepped.stats));
  CHECK(direct_stop.prefix == stepped_stop.prefix);
  CHECK(direct_stop.cursor == stepped_stop.cursor);
}

TEST_CASE("fill_pages") {
  const Graph g = cycle(6);
  const PageColoring c = fill_pages(g, {1, 2, 2, 1, 2, 1}, 4);
  std::set<Page> used(c.assignment.begin(), c.assignment.end());
  CHECK(used.size() == 4);
  CHECK(verify(BookEmbedding(g, CyclicLayout::identity(6), c)).valid);
  CHECK_THROWS_AS(fill_pages(cycle(3), {1, 2, 3}, 4), Error);
}

TEST_CASE("config hash separates searches") {
  const Graph g = cycle(5);
  const CyclicLayout l = CyclicLayout::identity(5);
  SearchConfig a, b;
  b.capacity_prune = false;
  CHECK(search_config_hash(g, &l, 0, 3, a) == search_config_hash(g, &l, 0, 3, a));
  CHECK(search_config_hash(g, &l, 0, 3, a) != search_config_hash(g, &l, 0, 4, a));
  CHECK(search_config_hash(g, &l, 0, 3, a) != search_config_hash(g, &l, 0, 3, b));
  a.node_budget = 5;
  CHECK(search_config_hash(g, &l, 0, 3, a) == search_config_hash(g, &l, 0, 3, SearchConfig{}));
}
