#pragma once

#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mbook/embedding.hpp"
#include "mbook/extension.hpp"

namespace mbook {

// {"n": int, "edges": [[u, v], ...]} with u < v, sorted.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

struct EmbeddingDocument {
  BookEmbedding embedding;
  std::map<Page, std::string> color_names;  // display only
};

// {"graph": {...}, "layout": [...], "pages": {"1": [[u, v], ...], ...}}
// plus "color_names" when names are given.
nlohmann::json embedding_to_json(const BookEmbedding& embedding,
                                 const std::map<Page, std::string>& color_names = {});
EmbeddingDocument embedding_from_json(const nlohmann::json& j);

// {"renumbering": {"old": new, ...}, "seed": j, "r": r, "phase": 1|2}
nlohmann::json extension_sidecar(const ExtensionResult& result);

// Parse failures throw Error(parse) naming the source and location.
nlohmann::json parse_json_text(std::string_view text, const std::string& source);
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Stable text form: two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

// Graph from a file path or a name: cycleN, completeN, or CaxCb / CaCb for
// the product of two cycles (e.g. c3c3, C5xC7).
Graph resolve_graph(const std::string& spec);

}  // namespace mbook
