#include "mbook/io.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "mbook/error.hpp"

namespace mbook {

using nlohmann::json;

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.order()}, {"edges", edges}};
}

namespace {

Edge edge_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::parse, "edge must be a two-element array, got " + j.dump());
  }
  return make_edge(j[0].get<Vertex>(), j[1].get<Vertex>());
}

template <typename Fn>
auto schema_guard(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, e.what());
  }
}

}  // namespace

Graph graph_from_json(const json& j) {
  return schema_guard([&] {
    std::vector<Edge> edges;
    for (const json& e : j.at("edges")) edges.push_back(edge_from_json(e));
    return Graph(j.at("n").get<int>(), std::move(edges));
  });
}

json embedding_to_json(const BookEmbedding& embedding,
                       const std::map<Page, std::string>& color_names) {
  json pages = json::object();
  for (Page p = 1; p <= embedding.pages(); ++p) {
    json list = json::array();
    for (const Edge& e : embedding.page_edges(p)) list.push_back({e.u, e.v});
    pages[std::to_string(p)] = list;
  }
  json out = {{"graph", graph_to_json(embedding.graph())},
              {"layout", std::vector<Vertex>(embedding.layout().order().begin(),
                                             embedding.layout().order().end())},
              {"pages", pages}};
  if (!color_names.empty()) {
    json names = json::object();
    for (const auto& [p, name] : color_names) names[std::to_string(p)] = name;
    out["color_names"] = names;
  }
  return out;
}

EmbeddingDocument embedding_from_json(const json& j) {
  return schema_guard([&] {
    Graph g = graph_from_json(j.at("graph"));
    CyclicLayout layout(j.at("layout").get<std::vector<Vertex>>());
    const json& pages = j.at("pages");
    if (!pages.is_object()) throw Error(ErrorCode::parse, "\"pages\" must be an object");
    int k = 0;
    std::map<int, const json*> by_page;
    for (auto it = pages.begin(); it != pages.end(); ++it) {
      int p = 0;
      try {
        std::size_t used = 0;
        p = std::stoi(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse, "page name '" + it.key() + "' is not an integer");
      }
      if (p < 1 || p > kMaxPages) {
        throw Error(ErrorCode::parse, "page " + it.key() + " outside 1.." +
                                          std::to_string(kMaxPages));
      }
      by_page[p] = &it.value();
      k = std::max(k, p);
    }
    std::vector<std::vector<Edge>> lists(k);
    for (const auto& [p, list] : by_page)
      for (const json& e : *list) lists[p - 1].push_back(edge_from_json(e));
    EmbeddingDocument doc{embedding_from_pages(std::move(g), std::move(layout), lists), {}};
    if (j.contains("color_names")) {
      for (auto it = j["color_names"].begin(); it != j["color_names"].end(); ++it)
        doc.color_names[std::stoi(it.key())] = it.value().get<std::string>();
    }
    return doc;
  });
}

json extension_sidecar(const ExtensionResult& result) {
  json map = json::object();
  for (const auto& [from, to] : result.renumbering) map[std::to_string(from)] = to;
  return {{"renumbering", map},
          {"seed", result.plan.seed},
          {"r", result.plan.r},
          {"phase", result.plan.phase},
          {"unused_pages", {result.plan.unused.first, result.plan.unused.second}}};
}

json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, source + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::io, "write failed for " + path);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

Graph resolve_graph(const std::string& spec) {
  if (std::filesystem::exists(spec)) return graph_from_json(read_json_file(spec));
  std::smatch m;
  static const std::regex cycle_re(R"((?:cycle|c)(\d+))", std::regex::icase);
  static const std::regex complete_re(R"((?:complete|k)(\d+))", std::regex::icase);
  static const std::regex product_re(R"(c(\d+)x?c(\d+))", std::regex::icase);
  if (std::regex_match(spec, m, product_re))
    return cartesian_product(cycle(std::stoi(m[1])), cycle(std::stoi(m[2])));
  if (std::regex_match(spec, m, cycle_re)) return cycle(std::stoi(m[1]));
  if (std::regex_match(spec, m, complete_re)) return complete(std::stoi(m[1]));
  throw Error(ErrorCode::io, "'" + spec + "' is neither a file nor a known graph name");
}

}  // namespace mbook
