#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbook/embedding.hpp"

namespace mbook {

enum class LayoutMode { fixed, all, en_bloc };
enum class SearchStatus { found, exhausted, budget_exhausted };

const char* to_string(SearchStatus status);
const char* to_string(LayoutMode mode);

struct SearchConfig {
  int pages = 0;
  LayoutMode layout_mode = LayoutMode::fixed;
  bool require_extensible = false;
  std::uint64_t node_budget = 1'000'000'000;
  double time_budget_seconds = 24 * 3600.0;
  // Nodes between checkpoint writes; 0 writes only when the run stops on
  // its budget. Ignored without a checkpoint path.
  std::uint64_t checkpoint_interval = 0;
  std::string checkpoint_path;
  int workers = 1;
  // Refute k immediately when |E| > k * floor(|V| / 2) (each page is a
  // matching).
  bool capacity_prune = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t adjacency_prunes = 0;
  std::uint64_t crossing_prunes = 0;
  std::uint64_t symmetry_prunes = 0;
  std::uint64_t seed_prunes = 0;
  std::uint64_t capacity_prunes = 0;
  std::uint64_t dead_ends = 0;  // a ready edge lost every page
  std::uint64_t rejected_witnesses = 0;
  std::uint64_t layouts = 0;    // layouts tried in all-layouts mode
  double wall_seconds = 0.0;

  // Everything but wall time.
  bool same_counts(const SearchStats& other) const;
  void add(const SearchStats& other);
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<BookEmbedding> witness;
  SearchStats stats;
  std::string checkpoint_path;  // set when a checkpoint was written
};

// DFS state at a stop point: the applied choice at each depth plus the next
// choice to try at the following depth.
struct Checkpoint {
  std::vector<int> prefix;
  int cursor = 0;
  SearchStats stats;
  std::string config_hash;
};

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

// Decides whether a k-page matching book embedding with this layout exists.
// Runs single-threaded; config.workers is ignored.
SearchOutcome color_search(const Graph& g, const CyclicLayout& layout, int k,
                           const SearchConfig& config = {},
                           const std::optional<Checkpoint>& resume = std::nullopt);

// Same decision over every layout up to rotation and reflection.
SearchOutcome layout_search(const Graph& g, int k, const SearchConfig& config = {});

struct MbtResult {
  int mbt = 0;
  std::optional<BookEmbedding> witness;
  SearchStats stats;
};

// Exact matching book thickness by enumeration; refuses graphs with more
// than max_vertices vertices.
MbtResult mbt_exact_search(const Graph& g, int max_vertices = 10,
                           const SearchConfig& config = {});
// Runs without the capacity shortcut so every refutation comes from search.
int mbt_exact(const Graph& g, int max_vertices = 10);

// Searches en bloc layouts of H x C_s (natural block order fixed) together
// with k-page colorings. With config.require_extensible the witness must be
// extensible and survive one seed replication with r = 2.
SearchOutcome search_extensible(const Graph& h_graph, int s, int k,
                                const SearchConfig& config = {},
                                const std::optional<Checkpoint>& resume = std::nullopt);

// Hash of the parameters that determine the search tree (not budgets).
std::string search_config_hash(const Graph& g, const CyclicLayout* layout,
                               int s, int k, const SearchConfig& config);

// Makes a coloring onto at most k pages surjective by moving single edges
// of multi-edge pages to unused pages; requires |E| >= k.
PageColoring fill_pages(const Graph& g, std::vector<Page> assignment, int k);

}  // namespace mbook
