// mbook: verify, extend, search and draw matching book embeddings.
//
// Exit codes: 0 ok/found, 1 invalid or failed, 2 parse error,
// 3 search exhausted, 4 search budget exhausted.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mbook/cnf.hpp"
#include "mbook/draw.hpp"
#include "mbook/error.hpp"
#include "mbook/extension.hpp"
#include "mbook/fixtures.hpp"
#include "mbook/io.hpp"
#include "mbook/search.hpp"

namespace {

using namespace mbook;

enum Exit : int { kOk = 0, kInvalid = 1, kParse = 2, kExhausted = 3, kBudget = 4 };

struct Source {
  std::string name;
  EmbeddingDocument doc;
  std::optional<ProductShape> shape;
};

Source load_source(const std::string& spec) {
  if (is_fixture_name(spec)) {
    Fixture f = fixture(spec);
    return {spec, {f.embedding, f.color_names}, ProductShape{f.h, f.s, f.t}};
  }
  return {spec, embedding_from_json(read_json_file(spec)), std::nullopt};
}

// t of the H-factor, read off block 1.
int row_degree(const Graph& g, int h) {
  int t = 0;
  for (Vertex v = 1; v <= h; ++v) {
    int d = 0;
    for (Vertex w : g.neighbors(v))
      if (w <= h) ++d;
    t = std::max(t, d);
  }
  return t;
}

ProductShape shape_for(const Source& src, int h, int s) {
  if (h > 0 && s > 0) return {h, s, row_degree(src.doc.embedding.graph(), h)};
  if (src.shape) return *src.shape;
  throw Error(ErrorCode::precondition, "pass --h and --s for a non-fixture embedding");
}

CyclicLayout resolve_layout(const std::string& spec, int n) {
  if (spec.empty() || spec == "identity") return CyclicLayout::identity(n);
  if (spec == "lemma1") return lemma1_embedding().layout();
  if (spec == "lemma2") return lemma2_embedding().layout();
  if (is_fixture_name(spec)) return fixture(spec).embedding.layout();
  if (std::filesystem::exists(spec)) {
    const auto j = read_json_file(spec);
    if (j.is_object() && j.contains("layout"))
      return CyclicLayout(j.at("layout").get<std::vector<Vertex>>());
    return CyclicLayout(j.get<std::vector<Vertex>>());
  }
  std::vector<Vertex> order;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ',');) order.push_back(std::stoi(tok));
  return CyclicLayout(std::move(order));
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

void print_stats(const SearchStats& s) {
  std::cout << "nodes: " << s.nodes << "\n"
            << "prunes: adjacency " << s.adjacency_prunes << ", crossing "
            << s.crossing_prunes << ", symmetry " << s.symmetry_prunes << ", seed "
            << s.seed_prunes << ", capacity " << s.capacity_prunes << ", dead ends "
            << s.dead_ends << "\n";
  if (s.layouts) std::cout << "layouts: " << s.layouts << "\n";
  if (s.rejected_witnesses) std::cout << "rejected witnesses: " << s.rejected_witnesses << "\n";
  std::cout << "wall seconds: " << s.wall_seconds << "\n";
}

int status_exit(SearchStatus status) {
  switch (status) {
    case SearchStatus::found: return kOk;
    case SearchStatus::exhausted: return kExhausted;
    case SearchStatus::budget_exhausted: return kBudget;
  }
  return kInvalid;
}

int cmd_verify(const std::string& spec) {
  const Source src = load_source(spec);
  const BookEmbedding& e = src.doc.embedding;
  const ValidityReport report = verify(e);
  const int delta = max_degree(e.graph());
  std::cout << "embedding: " << src.name << "\n"
            << "vertices: " << e.graph().order() << ", edges: " << e.graph().size()
            << ", pages: " << report.pages << "\n"
            << "max degree: " << delta << "\n"
            << "mbt lower bound: " << mbt_lower_bound(e.graph()) << "\n";
  if (!report.valid) {
    std::cout << "verdict: INVALID\n";
    for (const Violation& v : report.violations) std::cout << "  " << describe(v) << "\n";
    for (Page p : report.empty_pages) std::cout << "  empty page " << p << "\n";
    return kInvalid;
  }
  std::cout << "verdict: valid\n";
  if (report.pages == delta) {
    std::cout << "classification: dispersable witness\n";
  } else if (report.pages == delta + 1) {
    std::cout << "classification: nearly dispersable witness\n";
  } else {
    std::cout << "classification: " << report.pages << "-page witness (max degree + "
              << report.pages - delta << ")\n";
  }
  return kOk;
}

int cmd_extend(const std::string& spec, int seed, int r, int h, int s,
               const std::string& out) {
  const Source src = load_source(spec);
  const ProductShape shape = shape_for(src, h, s);
  if (seed == 0) seed = lowest_seed(src.doc.embedding, shape);
  const ExtensionResult result = extend(src.doc.embedding, shape, seed, r);
  const ValidityReport report = verify(result.embedding);
  std::cout << "seed: " << seed << "\n"
            << "r: " << r << "\n"
            << "unused pages: " << result.plan.unused.first << ", "
            << result.plan.unused.second << "\n"
            << "phase: " << result.plan.phase << "\n"
            << "result: H x C" << result.shape.s << ", "
            << result.embedding.graph().order() << " vertices, "
            << result.embedding.graph().size() << " edges, " << report.pages
            << " pages, " << (report.valid ? "verified" : "INVALID") << "\n";
  if (!out.empty()) {
    write_text_file(out, dump_json(embedding_to_json(result.embedding, src.doc.color_names)));
    const std::filesystem::path sidecar =
        std::filesystem::path(out).replace_extension(".extension.json");
    write_text_file(sidecar.string(), dump_json(extension_sidecar(result)));
    std::cout << "wrote " << out << " and " << sidecar.string() << "\n";
  }
  return report.valid ? kOk : kInvalid;
}

int cmd_certify(int m, int n, const std::string& out) {
  const BookEmbedding e = certify_family(m, n);
  const ValidityReport report = verify(e);
  std::cout << "C" << m << " x C" << n << ": " << e.graph().order() << " vertices, "
            << e.graph().size() << " edges, " << report.pages << " pages, "
            << (report.valid ? "verified" : "INVALID") << "\n";
  if (report.valid && report.pages == max_degree(e.graph()) + 1 &&
      mbt_lower_bound(e.graph()) == report.pages) {
    std::cout << "nearly dispersable: lower bound " << mbt_lower_bound(e.graph())
              << " met\n";
  }
  if (!out.empty()) {
    write_text_file(out, dump_json(embedding_to_json(e, m == 5 && n >= 5
                                                            ? lemma2_color_names()
                                                            : lemma1_color_names())));
  }
  return report.valid ? kOk : kInvalid;
}

struct SearchArgs {
  std::string h_graph;
  int s = 0;
  std::string graph;
  std::string layout;
  bool all_layouts = false;
  int k = 0;
  bool extensible = false;
  std::uint64_t nodes = 1'000'000'000;
  double seconds = 24 * 3600.0;
  std::string checkpoint;
  std::uint64_t checkpoint_every = 0;
  std::string resume;
  int workers = 1;
  bool no_capacity = false;
  std::string out;
};

int cmd_search(const SearchArgs& a) {
  SearchConfig config;
  config.pages = a.k;
  config.require_extensible = a.extensible;
  config.node_budget = a.nodes;
  config.time_budget_seconds = a.seconds;
  config.checkpoint_interval = a.checkpoint_every;
  config.checkpoint_path = a.checkpoint;
  config.workers = a.workers;
  config.capacity_prune = !a.no_capacity;
  std::optional<Checkpoint> resume;
  if (!a.resume.empty()) {
    resume = load_checkpoint(a.resume);
    if (config.checkpoint_path.empty()) config.checkpoint_path = a.resume;
  }

  SearchOutcome outcome;
  if (!a.h_graph.empty()) {
    const Graph h = resolve_graph(a.h_graph);
    config.layout_mode = LayoutMode::en_bloc;
    if (config.checkpoint_path.empty() && config.workers == 1) {
      if (const char* dir = std::getenv("MBOOK_CHECKPOINT_DIR")) {
        std::filesystem::create_directories(dir);
        config.checkpoint_path = (std::filesystem::path(dir) /
                                  ("search-" + search_config_hash(h, nullptr, a.s, a.k, config) +
                                   ".json"))
                                     .string();
      }
    }
    outcome = search_extensible(h, a.s, a.k, config, resume);
  } else if (!a.graph.empty()) {
    const Graph g = resolve_graph(a.graph);
    if (a.all_layouts) {
      outcome = layout_search(g, a.k, config);
    } else {
      outcome = color_search(g, resolve_layout(a.layout, g.order()), a.k, config, resume);
    }
  } else {
    throw Error(ErrorCode::precondition, "search needs --h/--s or --graph");
  }

  std::cout << "status: " << to_string(outcome.status) << "\n";
  print_stats(outcome.stats);
  if (!outcome.checkpoint_path.empty())
    std::cout << "checkpoint: " << outcome.checkpoint_path << "\n";
  if (outcome.witness) {
    const ValidityReport report = verify(*outcome.witness);
    std::cout << "witness: " << (report.valid ? "verified" : "INVALID") << ", "
              << report.pages << " pages\n";
    if (!a.out.empty()) write_text_file(a.out, dump_json(embedding_to_json(*outcome.witness)));
  }
  return status_exit(outcome.status);
}

int cmd_mbt(const std::string& graph, int max_vertices, int workers) {
  const Graph g = resolve_graph(graph);
  SearchConfig config;
  config.workers = workers;
  const MbtResult r = mbt_exact_search(g, max_vertices, config);
  std::cout << r.mbt << "\n";
  return kOk;
}

int cmd_export_cnf(const std::string& graph, const std::string& layout, int k,
                   const std::string& out) {
  const Graph g = resolve_graph(graph);
  emit(out, export_cnf(g, resolve_layout(layout, g.order()), k).to_dimacs());
  return kOk;
}

int cmd_decode_cnf(const std::string& graph, const std::string& layout, int k,
                   const std::string& model_path, const std::string& out) {
  const Graph g = resolve_graph(graph);
  std::ifstream in(model_path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + model_path);
  std::stringstream text;
  text << in.rdbuf();
  const std::vector<int> model = parse_solver_model(text.str());
  BookEmbedding e(g, resolve_layout(layout, g.order()), decode_cnf_model(g, k, model));
  const ValidityReport report = verify(e);
  std::cout << "decoded coloring: " << (report.valid ? "verified" : "INVALID") << "\n";
  if (!out.empty()) write_text_file(out, dump_json(embedding_to_json(e)));
  return report.valid ? kOk : kInvalid;
}

int cmd_draw(const std::string& spec, const std::string& out, std::string format) {
  const Source src = load_source(spec);
  if (format.empty()) format = std::filesystem::path(out).extension() == ".dot" ? "dot" : "svg";
  const std::string text = format == "dot" ? draw_dot(src.doc.embedding, src.doc.color_names)
                                           : draw_svg(src.doc.embedding, src.doc.color_names);
  emit(out, text);
  return kOk;
}

int cmd_fixtures(const std::string& action, const std::string& name, const std::string& out) {
  if (action == "list") {
    for (const std::string& n : fixture_names()) {
      const Fixture f = fixture(n);
      std::cout << n << "  (" << f.embedding.graph().order() << " vertices, "
                << f.embedding.pages() << " pages) " << f.note << "\n";
    }
    return kOk;
  }
  const Fixture f = fixture(name);
  emit(out, dump_json(embedding_to_json(f.embedding, f.color_names)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matching book embeddings: verify, extend, search, draw"};
  app.require_subcommand(1);
  // --h names the H factor, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  std::string source, out, layout, graph, format, model, action, name;
  int seed = 0, r = 0, h = 0, s = 0, k = 0, m = 0, n = 0, max_vertices = 10, workers = 1;
  SearchArgs sa;

  auto* verify_cmd = app.add_subcommand("verify", "Check an embedding (file or fixture name)");
  verify_cmd->add_option("source", source)->required();

  auto* extend_cmd = app.add_subcommand("extend", "Replicate a seed block");
  extend_cmd->add_option("source", source)->required();
  extend_cmd->add_option("--r", r, "Even number of blocks to add")->required();
  extend_cmd->add_option("--seed", seed, "Seed block (default: lowest seed)");
  extend_cmd->add_option("--h", h, "Order of the H factor (non-fixture input)");
  extend_cmd->add_option("--s", s, "Length of the cycle factor (non-fixture input)");
  extend_cmd->add_option("-o,--out", out, "Output embedding JSON");

  auto* certify_cmd = app.add_subcommand("certify-family", "Certify C_m x C_n, m in {3,5}, n odd");
  certify_cmd->add_option("m", m)->required();
  certify_cmd->add_option("n", n)->required();
  certify_cmd->add_option("-o,--out", out);

  auto* search_cmd = app.add_subcommand("search", "Search for embeddings");
  search_cmd->add_option("--h", sa.h_graph, "H factor (name or file) for en bloc search");
  search_cmd->add_option("--s", sa.s, "Cycle length for en bloc search");
  search_cmd->add_option("--graph", sa.graph, "Graph for fixed-layout search");
  search_cmd->add_option("--layout", sa.layout, "Layout: fixture, file, or comma list");
  search_cmd->add_flag("--all-layouts", sa.all_layouts, "Try every layout");
  search_cmd->add_option("--k", sa.k, "Page budget")->required();
  search_cmd->add_flag("--extensible", sa.extensible, "Require an extensible witness");
  search_cmd->add_option("--nodes", sa.nodes, "Node budget");
  search_cmd->add_option("--time", sa.seconds, "Wall-time budget in seconds");
  search_cmd->add_option("--checkpoint", sa.checkpoint, "Checkpoint file");
  search_cmd->add_option("--checkpoint-every", sa.checkpoint_every, "Nodes between checkpoints");
  search_cmd->add_option("--resume", sa.resume, "Resume from a checkpoint");
  search_cmd->add_option("--workers", sa.workers, "Worker threads");
  search_cmd->add_flag("--no-capacity-prune", sa.no_capacity);
  search_cmd->add_option("-o,--out", sa.out, "Write the witness as JSON");

  auto* mbt_cmd = app.add_subcommand("mbt", "Exact matching book thickness (small graphs)");
  mbt_cmd->add_option("graph", graph)->required();
  mbt_cmd->add_option("--max-vertices", max_vertices);
  mbt_cmd->add_option("--workers", workers);

  auto* cnf_cmd = app.add_subcommand("export-cnf", "DIMACS CNF for a fixed layout");
  cnf_cmd->add_option("graph", graph)->required();
  cnf_cmd->add_option("--layout", layout);
  cnf_cmd->add_option("--k", k)->required();
  cnf_cmd->add_option("-o,--out", out);

  auto* decode_cmd = app.add_subcommand("decode-cnf", "Turn a solver model into an embedding");
  decode_cmd->add_option("graph", graph)->required();
  decode_cmd->add_option("--layout", layout);
  decode_cmd->add_option("--k", k)->required();
  decode_cmd->add_option("--model", model)->required();
  decode_cmd->add_option("-o,--out", out);

  auto* draw_cmd = app.add_subcommand("draw", "Circular drawing as SVG or DOT");
  draw_cmd->add_option("source", source)->required();
  draw_cmd->add_option("out", out)->required();
  draw_cmd->add_option("--format", format)->check(CLI::IsMember({"svg", "dot"}));

  auto* fixtures_cmd = app.add_subcommand("fixtures", "List or dump built-in fixtures");
  fixtures_cmd->add_option("action", action)->required()->check(CLI::IsMember({"list", "dump"}));
  fixtures_cmd->add_option("name", name);
  fixtures_cmd->add_option("-o,--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*verify_cmd) return cmd_verify(source);
    if (*extend_cmd) return cmd_extend(source, seed, r, h, s, out);
    if (*certify_cmd) return cmd_certify(m, n, out);
    if (*search_cmd) return cmd_search(sa);
    if (*mbt_cmd) return cmd_mbt(graph, max_vertices, workers);
    if (*cnf_cmd) return cmd_export_cnf(graph, layout, k, out);
    if (*decode_cmd) return cmd_decode_cnf(graph, layout, k, model, out);
    if (*draw_cmd) return cmd_draw(source, out, format);
    if (*fixtures_cmd) return cmd_fixtures(action, name, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::parse ? kParse : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
