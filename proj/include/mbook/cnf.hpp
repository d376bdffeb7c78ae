#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbook/embedding.hpp"

namespace mbook {

// Variable x(e, p) is true when edge e sits on page p:
//   at least one page per edge, at most one page per edge,
//   every page used at least once,
//   no page shared by an adjacent or crossing pair.
struct CnfDocument {
  int variables = 0;
  int pages = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::string> comments;

  std::string to_dimacs() const;
};

inline int cnf_variable(std::size_t edge_index, Page p, int k) {
  return static_cast<int>(edge_index) * k + p;
}

CnfDocument export_cnf(const Graph& g, const CyclicLayout& layout, int k);

// Extracts the literals of a solver model: DIMACS-competition "v" lines
// (optionally preceded by "s SATISFIABLE"), or minisat's result file
// ("SAT" then the literals). Throws parse on UNSAT or malformed input.
std::vector<int> parse_solver_model(std::string_view text);

// Maps a model back to a coloring; throws parse unless every edge has
// exactly one true page variable.
PageColoring decode_cnf_model(const Graph& g, int k, std::span<const int> model);

}  // namespace mbook
