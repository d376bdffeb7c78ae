#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mbook/cnf.hpp"
#include "mbook/draw.hpp"
#include "mbook/error.hpp"
#include "mbook/extension.hpp"
#include "mbook/fixtures.hpp"
#include "mbook/io.hpp"
#include "mbook/search.hpp"

namespace py = pybind11;
using namespace mbook;

namespace {

std::pair<int, int> edge_tuple(const Edge& e) { return {e.u, e.v}; }

std::vector<std::pair<int, int>> edge_tuples(std::span<const Edge> edges) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : edges) out.push_back(edge_tuple(e));
  return out;
}

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> out;
  for (auto [u, v] : edges) out.push_back(make_edge(u, v));
  return Graph(n, out);
}

py::dict report_dict(const ValidityReport& r) {
  py::list violations;
  for (const Violation& v : r.violations) {
    py::dict d;
    d["kind"] = v.kind == ClashKind::adjacent ? "adjacent" : "crossing";
    d["first"] = edge_tuple(v.first);
    d["second"] = edge_tuple(v.second);
    d["page"] = v.page;
    d["shared"] = v.shared;
    violations.append(d);
  }
  py::dict out;
  out["valid"] = r.valid;
  out["pages"] = r.pages;
  out["violations"] = violations;
  out["empty_pages"] = r.empty_pages;
  return out;
}

py::dict outcome_dict(const SearchOutcome& o) {
  py::dict out;
  out["status"] = to_string(o.status);
  out["witness"] = o.witness ? py::cast(*o.witness) : py::none();
  out["nodes"] = o.stats.nodes;
  out["checkpoint"] = o.checkpoint_path;
  return out;
}

SearchConfig make_config(std::uint64_t nodes, double seconds, int workers, bool extensible,
                         const std::string& checkpoint) {
  SearchConfig c;
  c.node_budget = nodes;
  c.time_budget_seconds = seconds;
  c.workers = workers;
  c.require_extensible = extensible;
  c.checkpoint_path = checkpoint;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Matching book embeddings of products of cycles";

  py::register_exception<Error>(m, "MbookError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("order", &Graph::order)
      .def_property_readonly("size", &Graph::size)
      .def_property_readonly("edges", [](const Graph& g) { return edge_tuples(g.edges()); })
      .def("degree", &Graph::degree)
      .def("has_edge", &Graph::has_edge)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.order()) + " m=" + std::to_string(g.size()) + ">";
      });

  py::class_<CyclicLayout>(m, "CyclicLayout")
      .def(py::init<std::vector<Vertex>>())
      .def_property_readonly("order", [](const CyclicLayout& l) {
        return std::vector<Vertex>(l.order().begin(), l.order().end());
      })
      .def("rotated", &CyclicLayout::rotated)
      .def("reflected", &CyclicLayout::reflected)
      .def("canonical", &CyclicLayout::canonical)
      .def("__eq__", [](const CyclicLayout& a, const CyclicLayout& b) { return a == b; });

  py::class_<BookEmbedding>(m, "BookEmbedding")
      .def(py::init([](const Graph& g, const CyclicLayout& l, int k, std::vector<Page> pages) {
             return BookEmbedding(g, l, PageColoring{k, std::move(pages)});
           }),
           py::arg("graph"), py::arg("layout"), py::arg("k"), py::arg("assignment"))
      .def_property_readonly("graph", &BookEmbedding::graph)
      .def_property_readonly("layout", &BookEmbedding::layout)
      .def_property_readonly("pages", &BookEmbedding::pages)
      .def_property_readonly("assignment",
                             [](const BookEmbedding& e) { return e.coloring().assignment; })
      .def("page_edges", [](const BookEmbedding& e, Page p) { return edge_tuples(e.page_edges(p)); })
      .def("__eq__", [](const BookEmbedding& a, const BookEmbedding& b) { return a == b; });

  m.def("cycle", &cycle);
  m.def("complete", &complete);
  m.def("cartesian_product", &cartesian_product);
  m.def("max_degree", &max_degree);
  m.def("is_regular", &is_regular);
  m.def("is_bipartite", &is_bipartite);
  m.def("mbt_lower_bound", &mbt_lower_bound);
  m.def("resolve_graph", &resolve_graph);

  m.def("edges_conflict", [](const CyclicLayout& l, std::pair<int, int> a, std::pair<int, int> b) {
    return edges_conflict(l, make_edge(a.first, a.second), make_edge(b.first, b.second));
  });
  m.def("verify", [](const BookEmbedding& e) { return report_dict(verify(e)); });
  m.def("is_extensible", [](const BookEmbedding& e, int h, int s, int t) {
    const ExtensibilityVerdict v = is_extensible(e, h, s, t);
    py::dict out;
    out["extensible"] = v.extensible;
    out["seeds"] = v.seeds;
    out["reason"] = v.reason;
    return out;
  });
  m.def("seed_report", [](const BookEmbedding& e, int h, int s, int t) {
    const BlockDetection d = detect_blocks(e, h, s);
    if (const auto* bad = std::get_if<NotEnBloc>(&d)) throw Error(ErrorCode::precondition, bad->message);
    py::list out;
    for (const SeedReport& r : seed_report(e, std::get<BlockStructure>(d), t)) {
      py::dict row;
      row["block"] = r.block;
      row["order"] = r.order;
      row["intra_pages"] = pages_in(r.intra_pages);
      row["before_pages"] = pages_in(r.before_pages);
      row["after_pages"] = pages_in(r.after_pages);
      row["verdict_a"] = r.verdict_a;
      row["verdict_b"] = r.verdict_b;
      row["is_seed"] = r.is_seed;
      out.append(row);
    }
    return out;
  });

  m.def("fixture_names", &fixture_names);
  m.def("fixture", [](const std::string& name) { return fixture(name).embedding; });

  m.def("extend", [](const BookEmbedding& e, int h, int s, int t, int seed, int r) {
    const ExtensionResult x = extend(e, {h, s, t}, seed, r);
    py::dict out;
    out["embedding"] = x.embedding;
    out["phase"] = x.plan.phase;
    out["unused_pages"] = x.plan.unused;
    out["renumbering"] = x.renumbering;
    return out;
  }, py::arg("embedding"), py::arg("h"), py::arg("s"), py::arg("t"), py::arg("seed"), py::arg("r"));
  m.def("certify_family", &certify_family);

  m.def("color_search",
        [](const Graph& g, const CyclicLayout& l, int k, std::uint64_t nodes, double seconds) {
          py::gil_scoped_release release;
          SearchOutcome o = color_search(g, l, k, make_config(nodes, seconds, 1, false, ""));
          py::gil_scoped_acquire acquire;
          return outcome_dict(o);
        },
        py::arg("graph"), py::arg("layout"), py::arg("k"), py::arg("nodes") = 1'000'000'000ull,
        py::arg("seconds") = 3600.0);
  m.def("search_extensible",
        [](const Graph& h_graph, int s, int k, bool extensible, std::uint64_t nodes,
           double seconds, int workers, const std::string& checkpoint,
           const std::string& resume) {
          std::optional<Checkpoint> from;
          if (!resume.empty()) from = load_checkpoint(resume);
          py::gil_scoped_release release;
          SearchOutcome o = search_extensible(
              h_graph, s, k, make_config(nodes, seconds, workers, extensible, checkpoint), from);
          py::gil_scoped_acquire acquire;
          return outcome_dict(o);
        },
        py::arg("h_graph"), py::arg("s"), py::arg("k"), py::arg("extensible") = true,
        py::arg("nodes") = 1'000'000'000ull, py::arg("seconds") = 3600.0, py::arg("workers") = 1,
        py::arg("checkpoint") = "", py::arg("resume") = "");
  m.def("mbt_exact", &mbt_exact, py::arg("graph"), py::arg("max_vertices") = 10);

  m.def("export_cnf", [](const Graph& g, const CyclicLayout& l, int k) {
    return export_cnf(g, l, k).to_dimacs();
  });
  m.def("decode_cnf_model", [](const Graph& g, const CyclicLayout& l, int k,
                               const std::vector<int>& model) {
    return BookEmbedding(g, l, decode_cnf_model(g, k, model));
  });

  m.def("to_json", [](const BookEmbedding& e) { return dump_json(embedding_to_json(e)); });
  m.def("from_json", [](const std::string& text) {
    return embedding_from_json(parse_json_text(text, "<string>")).embedding;
  });
  m.def("draw_svg", [](const BookEmbedding& e) { return draw_svg(e); });
}
