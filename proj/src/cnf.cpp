#include "mbook/cnf.hpp"

#include <cstdlib>
#include <sstream>

#include "mbook/error.hpp"

namespace mbook {

std::string CnfDocument::to_dimacs() const {
  std::ostringstream os;
  for (const std::string& c : comments) os << "c " << c << "\n";
  os << "p cnf " << variables << " " << clauses.size() << "\n";
  for (const auto& clause : clauses) {
    for (int lit : clause) os << lit << " ";
    os << "0\n";
  }
  return os.str();
}

CnfDocument export_cnf(const Graph& g, const CyclicLayout& layout, int k) {
  if (k < 1) throw Error(ErrorCode::precondition, "k must be positive");
  if (layout.size() != g.order()) {
    throw Error(ErrorCode::malformed_input, "layout does not match the graph");
  }
  CnfDocument doc;
  doc.pages = k;
  doc.variables = static_cast<int>(g.size()) * k;
  doc.comments.push_back("matching book embedding, " + std::to_string(g.order()) +
                         " vertices, " + std::to_string(g.size()) + " edges, " +
                         std::to_string(k) + " pages");
  doc.comments.push_back("x(e,p) = e*k + p for edge index e (0-based) and page p");
  for (std::size_t e = 0; e < g.size(); ++e) {
    doc.comments.push_back("edge " + std::to_string(e) + " = " +
                           std::to_string(g.edge(e).u) + "-" +
                           std::to_string(g.edge(e).v));
  }
  auto x = [&](std::size_t e, Page p) { return cnf_variable(e, p, k); };

  for (std::size_t e = 0; e < g.size(); ++e) {
    std::vector<int> some;
    for (Page p = 1; p <= k; ++p) some.push_back(x(e, p));
    doc.clauses.push_back(std::move(some));
    for (Page p = 1; p <= k; ++p)
      for (Page q = p + 1; q <= k; ++q) doc.clauses.push_back({-x(e, p), -x(e, q)});
  }
  for (Page p = 1; p <= k; ++p) {
    std::vector<int> used;
    for (std::size_t e = 0; e < g.size(); ++e) used.push_back(x(e, p));
    doc.clauses.push_back(std::move(used));
  }
  for (std::size_t e = 0; e < g.size(); ++e) {
    for (std::size_t f = e + 1; f < g.size(); ++f) {
      const Edge& a = g.edge(e);
      const Edge& b = g.edge(f);
      if (!a.shares_vertex(b) && !edges_conflict(layout, a, b)) continue;
      for (Page p = 1; p <= k; ++p) doc.clauses.push_back({-x(e, p), -x(f, p)});
    }
  }
  return doc;
}

std::vector<int> parse_solver_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<int> model;
  bool minisat_style = false;
  bool saw_values = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "c") continue;
    if (head == "s") {
      std::string verdict;
      ls >> verdict;
      if (verdict != "SATISFIABLE") throw Error(ErrorCode::parse, "solver reports " + verdict);
      continue;
    }
    if (head == "UNSAT" || head == "UNSATISFIABLE") {
      throw Error(ErrorCode::parse, "solver reports UNSAT");
    }
    if (head == "SAT" || head == "SATISFIABLE") {
      minisat_style = true;
      continue;
    }
    if (head != "v" && !minisat_style) {
      throw Error(ErrorCode::parse, "unexpected solver output line: " + line);
    }
    std::vector<std::string> tokens;
    if (head != "v") tokens.push_back(head);
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    for (const std::string& tok : tokens) {
      int lit = 0;
      try {
        lit = std::stoi(tok);
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse, "bad literal '" + tok + "'");
      }
      if (lit == 0) break;
      model.push_back(lit);
    }
    saw_values = true;
  }
  if (!saw_values) throw Error(ErrorCode::parse, "no model in solver output");
  return model;
}

PageColoring decode_cnf_model(const Graph& g, int k, std::span<const int> model) {
  std::vector<bool> truth(g.size() * k + 1, false);
  for (int lit : model) {
    const int var = std::abs(lit);
    if (var < 1 || var >= static_cast<int>(truth.size())) {
      throw Error(ErrorCode::parse, "model literal " + std::to_string(lit) + " out of range");
    }
    truth[var] = lit > 0;
  }
  PageColoring coloring{k, std::vector<Page>(g.size(), 0)};
  for (std::size_t e = 0; e < g.size(); ++e) {
    for (Page p = 1; p <= k; ++p) {
      if (!truth[cnf_variable(e, p, k)]) continue;
      if (coloring.assignment[e] != 0) {
        throw Error(ErrorCode::parse, "edge " + std::to_string(e) + " on two pages");
      }
      coloring.assignment[e] = p;
    }
    if (coloring.assignment[e] == 0) {
      throw Error(ErrorCode::parse, "edge " + std::to_string(e) + " on no page");
    }
  }
  return coloring;
}

}  // namespace mbook
