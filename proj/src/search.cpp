#include "mbook/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mbook/error.hpp"
#include "mbook/extension.hpp"

namespace mbook {

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

const char* to_string(LayoutMode mode) {
  switch (mode) {
    case LayoutMode::fixed: return "fixed";
    case LayoutMode::all: return "all";
    case LayoutMode::en_bloc: return "en-bloc";
  }
  return "?";
}

bool SearchStats::same_counts(const SearchStats& o) const {
  return nodes == o.nodes && adjacency_prunes == o.adjacency_prunes &&
         crossing_prunes == o.crossing_prunes &&
         symmetry_prunes == o.symmetry_prunes && seed_prunes == o.seed_prunes &&
         capacity_prunes == o.capacity_prunes && dead_ends == o.dead_ends &&
         rejected_witnesses == o.rejected_witnesses && layouts == o.layouts;
}

void SearchStats::add(const SearchStats& o) {
  nodes += o.nodes;
  adjacency_prunes += o.adjacency_prunes;
  crossing_prunes += o.crossing_prunes;
  symmetry_prunes += o.symmetry_prunes;
  seed_prunes += o.seed_prunes;
  capacity_prunes += o.capacity_prunes;
  dead_ends += o.dead_ends;
  rejected_witnesses += o.rejected_witnesses;
  layouts += o.layouts;
}

PageColoring fill_pages(const Graph& g, std::vector<Page> assignment, int k) {
  if (static_cast<int>(g.size()) < k) {
    throw Error(ErrorCode::precondition, "fewer edges than pages");
  }
  std::vector<int> count(k + 1, 0);
  for (Page p : assignment) ++count[p];
  for (Page empty = 1; empty <= k; ++empty) {
    if (count[empty] != 0) continue;
    // Take the last edge of the fullest page; a lone edge on a fresh page
    // clashes with nothing.
    const Page donor = static_cast<Page>(
        std::max_element(count.begin() + 1, count.end()) - count.begin());
    for (std::size_t i = assignment.size(); i-- > 0;) {
      if (assignment[i] == donor) {
        assignment[i] = empty;
        break;
      }
    }
    --count[donor];
    ++count[empty];
  }
  return PageColoring{k, std::move(assignment)};
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

nlohmann::json stats_to_json(const SearchStats& s) {
  return {{"nodes", s.nodes},
          {"adjacency_prunes", s.adjacency_prunes},
          {"crossing_prunes", s.crossing_prunes},
          {"symmetry_prunes", s.symmetry_prunes},
          {"seed_prunes", s.seed_prunes},
          {"capacity_prunes", s.capacity_prunes},
          {"dead_ends", s.dead_ends},
          {"rejected_witnesses", s.rejected_witnesses},
          {"layouts", s.layouts},
          {"wall_seconds", s.wall_seconds}};
}

SearchStats stats_from_json(const nlohmann::json& j) {
  SearchStats s;
  s.nodes = j.at("nodes").get<std::uint64_t>();
  s.adjacency_prunes = j.at("adjacency_prunes").get<std::uint64_t>();
  s.crossing_prunes = j.at("crossing_prunes").get<std::uint64_t>();
  s.symmetry_prunes = j.at("symmetry_prunes").get<std::uint64_t>();
  s.seed_prunes = j.at("seed_prunes").get<std::uint64_t>();
  s.capacity_prunes = j.at("capacity_prunes").get<std::uint64_t>();
  s.dead_ends = j.at("dead_ends").get<std::uint64_t>();
  s.rejected_witnesses = j.at("rejected_witnesses").get<std::uint64_t>();
  s.layouts = j.value("layouts", std::uint64_t{0});
  s.wall_seconds = j.value("wall_seconds", 0.0);
  return s;
}

}  // namespace

void save_checkpoint(const Checkpoint& c, const std::string& path) {
  const nlohmann::json j = {{"version", 1},
                            {"prefix", c.prefix},
                            {"cursor", c.cursor},
                            {"stats", stats_to_json(c.stats)},
                            {"config_hash", c.config_hash}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::io, "cannot write checkpoint " + tmp);
    out << j.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error(ErrorCode::io, "cannot move checkpoint into place at " + path);
  }
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read checkpoint " + path);
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    Checkpoint c;
    c.prefix = j.at("prefix").get<std::vector<int>>();
    c.cursor = j.at("cursor").get<int>();
    c.stats = stats_from_json(j.at("stats"));
    c.config_hash = j.at("config_hash").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path + ": " + e.what());
  }
}

std::string search_config_hash(const Graph& g, const CyclicLayout* layout, int s,
                                int k, const SearchConfig& config) {
  std::ostringstream os;
  os << "v1|" << to_string(config.layout_mode) << "|k" << k << "|s" << s << "|x"
     << config.require_extensible << "|c" << config.capacity_prune << "|n"
     << g.order() << "|";
  for (const Edge& e : g.edges()) os << e.u << "-" << e.v << ",";
  if (layout) {
    os << "|L";
    for (Vertex v : layout->order()) os << v << ",";
  }
  // FNV-1a, 64 bit.
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : os.str()) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

// ---------------------------------------------------------------------------
// Engine

namespace {

using Clock = std::chrono::steady_clock;

enum class StepKind { place, color };
enum class SeedCheck { none, intra_pages, after_matching, both_matchings };

struct Step {
  StepKind kind;
  int target = 0;  // block (1-based) or edge index
  int lo = 0;      // place: permutation index range [lo, hi)
  int hi = 0;
  SeedCheck check = SeedCheck::none;
};

// Incremental state of a partial embedding: placed blocks, colored edges,
// and per-edge, per-page counts of colored edges that forbid the page.
class Engine {
 public:
  // Every edge ready, layout fixed; steps color edges in a static order
  // that front-loads conflicts.
  Engine(const Graph& g, int k, const CyclicLayout& layout) : g_(g), k_(k) {
    init_common();
    pos_.assign(g_.order() + 1, -1);
    for (Vertex v = 1; v <= g_.order(); ++v) pos_[v] = layout.position(v);
    for (int e = 0; e < m_; ++e) {
      ready_.push_back(e);
      is_ready_[e] = true;
    }
    conflicts_.resize(m_);
    for (int e = 0; e < m_; ++e)
      for (int f = 0; f < m_; ++f)
        if (e != f) {
          const int kind = conflict(e, f);
          if (kind != 0) conflicts_[e].push_back({f, kind == 1});
        }
    for (int e : static_edge_order()) steps_.push_back({StepKind::color, e});
  }

  // En bloc layouts of H x C_s with natural block order.
  Engine(const Graph& h_graph, int s, int k, bool require_extensible)
      : g_(cartesian_product(h_graph, cycle(s))),
        k_(k),
        h_(h_graph.order()),
        s_(s),
        t_(max_degree(h_graph)),
        en_bloc_(true),
        require_extensible_(require_extensible) {
    init_common();
    pos_.assign(g_.order() + 1, -1);
    std::vector<int> perm(h_);
    std::iota(perm.begin(), perm.end(), 1);
    do perms_.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    // H = C_h with its standard labels is vertex-transitive under rotation,
    // so block 1 may start with H-vertex 1 (the first (h-1)! permutations).
    int first_block_hi = static_cast<int>(perms_.size());
    if (h_graph == cycle(h_)) first_block_hi /= h_;

    const ProductNumbering num{h_, s_};
    auto edge_id = [&](Vertex a, Vertex b) {
      return static_cast<int>(*g_.edge_index(make_edge(a, b)));
    };
    new_ready_.resize(s_ + 1);
    for (int j = 1; j <= s_; ++j) {
      steps_.push_back({StepKind::place, j, 0,
                        j == 1 ? first_block_hi : static_cast<int>(perms_.size())});
      std::vector<int>& fresh = new_ready_[j];
      for (const Edge& e : h_graph.edges()) {
        const int id = edge_id(num.vertex(e.u, j), num.vertex(e.v, j));
        fresh.push_back(id);
        if (j == 1) block1_intra_.push_back(id);
      }
      const std::size_t intra_end = fresh.size();
      if (j >= 2) {
        for (int i = 1; i <= h_; ++i) {
          const int id = edge_id(num.vertex(i, j - 1), num.vertex(i, j));
          fresh.push_back(id);
          if (j == 2) block1_after_.push_back(id);
        }
      }
      if (j == s_) {
        for (int i = 1; i <= h_; ++i) {
          const int id = edge_id(num.vertex(i, s_), num.vertex(i, 1));
          fresh.push_back(id);
          block1_before_.push_back(id);
        }
      }
      for (std::size_t q = 0; q < fresh.size(); ++q) {
        Step step{StepKind::color, fresh[q]};
        if (require_extensible_) {
          if (j == 1 && q + 1 == intra_end) step.check = SeedCheck::intra_pages;
          if (j == 2 && q + 1 == fresh.size()) step.check = SeedCheck::after_matching;
          if (j == s_ && q + 1 == fresh.size()) step.check = SeedCheck::both_matchings;
        }
        steps_.push_back(step);
      }
    }
  }

  int depth_count() const { return static_cast<int>(steps_.size()); }
  int m() const { return m_; }
  const Graph& graph() const { return g_; }
  int pages() const { return k_; }
  ProductShape shape() const { return {h_, s_, t_}; }

  // Root-level candidate range, for splitting work across threads.
  std::pair<int, int> root_range() const {
    const Step& st = steps_.front();
    if (st.kind == StepKind::place) return {st.lo, st.hi};
    return {1, 2};
  }

  int next_candidate(int d, int from, SearchStats& stats) const {
    const Step& st = steps_[d];
    if (st.kind == StepKind::place) {
      const int v = std::max(from, st.lo);
      return v < st.hi ? v : -1;
    }
    const int e = st.target;
    const int limit = std::min(k_, max_used_ + 1);
    for (int p = std::max(from, 1); p <= limit; ++p) {
      if (adj_cnt_[idx(e, p)] > 0) {
        ++stats.adjacency_prunes;
        continue;
      }
      if (cross_cnt_[idx(e, p)] > 0) {
        ++stats.crossing_prunes;
        continue;
      }
      return p;
    }
    stats.symmetry_prunes += static_cast<std::uint64_t>(k_ - limit);
    return -1;
  }

  // Applies the choice; returns false when the resulting state is dead.
  // The caller undoes the choice either way.
  bool apply(int d, int value, SearchStats& stats) {
    const Step& st = steps_[d];
    if (st.kind == StepKind::place) return place(st.target, value, stats);
    const int e = st.target;
    const Page p = value;
    color_[e] = p;
    max_used_stack_.push_back(max_used_);
    max_used_ = std::max(max_used_, p);
    bool dead = false;
    for_conflicts(e, [&](int f, bool adjacent) {
      const std::size_t i = idx(f, p);
      if (adj_cnt_[i] + cross_cnt_[i] == 0) {
        if (++forbidden_[f] == k_ && color_[f] == 0) dead = true;
      }
      ++(adjacent ? adj_cnt_[i] : cross_cnt_[i]);
    });
    if (dead) {
      ++stats.dead_ends;
      return false;
    }
    if (st.check != SeedCheck::none && !seed_check(st.check)) {
      ++stats.seed_prunes;
      return false;
    }
    return true;
  }

  void undo(int d) {
    const Step& st = steps_[d];
    if (st.kind == StepKind::place) {
      unplace(st.target);
      return;
    }
    const int e = st.target;
    const Page p = color_[e];
    for_conflicts(e, [&](int f, bool adjacent) {
      const std::size_t i = idx(f, p);
      --(adjacent ? adj_cnt_[i] : cross_cnt_[i]);
      if (adj_cnt_[i] + cross_cnt_[i] == 0) --forbidden_[f];
    });
    color_[e] = 0;
    max_used_ = max_used_stack_.back();
    max_used_stack_.pop_back();
  }

  CyclicLayout current_layout() const {
    std::vector<Vertex> order(g_.order());
    for (Vertex v = 1; v <= g_.order(); ++v) order[pos_[v]] = v;
    return CyclicLayout(std::move(order));
  }

  std::vector<Page> current_colors() const {
    return std::vector<Page>(color_.begin(), color_.end());
  }

 private:
  std::size_t idx(int e, Page p) const {
    return static_cast<std::size_t>(e) * (k_ + 1) + p;
  }

  void init_common() {
    m_ = static_cast<int>(g_.size());
    color_.assign(m_, 0);
    is_ready_.assign(m_, false);
    forbidden_.assign(m_, 0);
    adj_cnt_.assign(static_cast<std::size_t>(m_) * (k_ + 1), 0);
    cross_cnt_.assign(static_cast<std::size_t>(m_) * (k_ + 1), 0);
  }

  // 0 = independent, 1 = adjacent, 2 = crossing. Both edges must be ready.
  int conflict(int e, int f) const {
    const Edge& a = g_.edge(e);
    const Edge& b = g_.edge(f);
    if (a.shares_vertex(b)) return 1;
    return chords_cross(pos_[a.u], pos_[a.v], pos_[b.u], pos_[b.v]) ? 2 : 0;
  }

  template <typename Fn>
  void for_conflicts(int e, Fn&& fn) {
    if (!en_bloc_) {
      for (const auto& [f, adjacent] : conflicts_[e]) fn(f, adjacent);
      return;
    }
    for (int f : ready_) {
      if (f == e) continue;
      const int kind = conflict(e, f);
      if (kind != 0) fn(f, kind == 1);
    }
  }

  bool place(int j, int perm_index, SearchStats& stats) {
    const std::vector<int>& perm = perms_[perm_index];
    const ProductNumbering num{h_, s_};
    for (int q = 0; q < h_; ++q) pos_[num.vertex(perm[q], j)] = (j - 1) * h_ + q;
    bool dead = false;
    for (int f : new_ready_[j]) {
      ready_.push_back(f);
      is_ready_[f] = true;
      for (int c : ready_) {
        if (c == f || color_[c] == 0) continue;
        const int kind = conflict(c, f);
        if (kind == 0) continue;
        const std::size_t i = idx(f, color_[c]);
        if (adj_cnt_[i] + cross_cnt_[i] == 0) ++forbidden_[f];
        ++(kind == 1 ? adj_cnt_[i] : cross_cnt_[i]);
      }
      if (forbidden_[f] == k_) dead = true;
    }
    if (dead) ++stats.dead_ends;
    return !dead;
  }

  void unplace(int j) {
    const std::vector<int>& fresh = new_ready_[j];
    for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) {
      const int f = *it;
      for (Page p = 0; p <= k_; ++p) {
        adj_cnt_[idx(f, p)] = 0;
        cross_cnt_[idx(f, p)] = 0;
      }
      forbidden_[f] = 0;
      is_ready_[f] = false;
      ready_.pop_back();
    }
    const ProductNumbering num{h_, s_};
    for (int i = 1; i <= h_; ++i) pos_[num.vertex(i, j)] = -1;
  }

  PageSet pages_of(const std::vector<int>& edges) const {
    PageSet set = 0;
    for (int e : edges) set |= page_bit(color_[e]);
    return set;
  }

  // Block 1 is required to be a seed.
  bool seed_check(SeedCheck check) const {
    const PageSet intra = pages_of(block1_intra_);
    if (check == SeedCheck::intra_pages) return std::popcount(intra) <= t_ + 1;
    const PageSet unused = (page_bit(k_ + 1) - 1) & ~intra;
    const PageSet after = pages_of(block1_after_);
    const PageSet before =
        check == SeedCheck::both_matchings ? pages_of(block1_before_) : 0;
    for (Page a = 1; a <= k_; ++a) {
      if (!(unused & page_bit(a))) continue;
      for (Page b = a + 1; b <= k_; ++b) {
        if (!(unused & page_bit(b))) continue;
        const PageSet pair = page_bit(a) | page_bit(b);
        if ((after & pair) != pair && (before & pair) != pair) return true;
      }
    }
    return false;
  }

  std::vector<int> static_edge_order() const {
    // Greedy: next edge has the most conflicts with edges already ordered,
    // then the highest conflict degree, then the lowest index.
    std::vector<int> order;
    std::vector<bool> taken(m_, false);
    std::vector<int> links(m_, 0);
    for (int step = 0; step < m_; ++step) {
      int best = -1;
      for (int e = 0; e < m_; ++e) {
        if (taken[e]) continue;
        if (best < 0 || links[e] > links[best] ||
            (links[e] == links[best] && conflicts_[e].size() > conflicts_[best].size()))
          best = e;
      }
      taken[best] = true;
      order.push_back(best);
      for (const auto& [f, adjacent] : conflicts_[best]) ++links[f];
    }
    return order;
  }

  Graph g_;
  int k_ = 0;
  int m_ = 0;
  int h_ = 0;
  int s_ = 0;
  int t_ = 0;
  bool en_bloc_ = false;
  bool require_extensible_ = false;

  std::vector<Step> steps_;
  std::vector<int> pos_;
  std::vector<int> ready_;
  std::vector<bool> is_ready_;
  std::vector<Page> color_;
  std::vector<int> forbidden_;
  std::vector<std::uint16_t> adj_cnt_;
  std::vector<std::uint16_t> cross_cnt_;
  int max_used_ = 0;
  std::vector<int> max_used_stack_;

  std::vector<std::vector<std::pair<int, bool>>> conflicts_;  // fixed mode
  std::vector<std::vector<int>> perms_;                        // en bloc
  std::vector<std::vector<int>> new_ready_;
  std::vector<int> block1_intra_;
  std::vector<int> block1_after_;
  std::vector<int> block1_before_;
};

// ---------------------------------------------------------------------------
// DFS driver

enum class DfsEnd { found, exhausted, budget, stopped };

using AcceptFn = std::function<std::optional<BookEmbedding>(const Engine&)>;

struct DfsControl {
  std::uint64_t node_budget = 0;
  Clock::time_point deadline;
  std::atomic<bool>* stop = nullptr;               // another worker finished
  std::atomic<std::uint64_t>* shared_nodes = nullptr;
  std::uint64_t checkpoint_interval = 0;
  std::string checkpoint_path;
  std::string config_hash;
  AcceptFn accept;
};

struct DfsState {
  std::vector<int> applied;
  int depth = 0;
  int cursor = 0;
};

Checkpoint make_checkpoint(const DfsState& st, const SearchStats& stats,
                           const DfsControl& ctl) {
  return {std::vector<int>(st.applied.begin(), st.applied.begin() + st.depth),
          st.cursor, stats, ctl.config_hash};
}

DfsEnd dfs(Engine& engine, int base, DfsState& st, SearchStats& stats,
           const DfsControl& ctl, std::optional<BookEmbedding>& witness) {
  const int last = engine.depth_count() - 1;
  std::uint64_t next_checkpoint =
      ctl.checkpoint_interval ? (stats.nodes / ctl.checkpoint_interval + 1) * ctl.checkpoint_interval
                              : 0;
  std::uint64_t ticks = 0;
  while (true) {
    const std::uint64_t spent = ctl.shared_nodes ? ctl.shared_nodes->load() : stats.nodes;
    if (spent >= ctl.node_budget) return DfsEnd::budget;
    if ((++ticks & 1023) == 0) {
      if (Clock::now() >= ctl.deadline) return DfsEnd::budget;
      if (ctl.stop && ctl.stop->load()) return DfsEnd::stopped;
    }
    if (next_checkpoint && stats.nodes >= next_checkpoint && !ctl.checkpoint_path.empty()) {
      save_checkpoint(make_checkpoint(st, stats, ctl), ctl.checkpoint_path);
      next_checkpoint += ctl.checkpoint_interval;
    }

    const int value = engine.next_candidate(st.depth, st.cursor, stats);
    if (value < 0) {
      if (st.depth == base) return DfsEnd::exhausted;
      --st.depth;
      engine.undo(st.depth);
      st.cursor = st.applied[st.depth] + 1;
      continue;
    }
    ++stats.nodes;
    if (ctl.shared_nodes) ctl.shared_nodes->fetch_add(1);
    st.applied[st.depth] = value;
    if (!engine.apply(st.depth, value, stats)) {
      engine.undo(st.depth);
      st.cursor = value + 1;
      continue;
    }
    if (st.depth == last) {
      if (auto w = ctl.accept(engine)) {
        witness = std::move(w);
        // Leave the state consistent for the caller.
        engine.undo(st.depth);
        st.cursor = value + 1;
        return DfsEnd::found;
      }
      ++stats.rejected_witnesses;
      engine.undo(st.depth);
      st.cursor = value + 1;
      continue;
    }
    ++st.depth;
    st.cursor = 0;
  }
}

void unwind(Engine& engine, DfsState& st, int base) {
  while (st.depth > base) {
    --st.depth;
    engine.undo(st.depth);
  }
}

// Single-threaded run with optional resume.
SearchOutcome run_single(Engine& engine, const SearchConfig& config,
                         DfsControl ctl, const std::optional<Checkpoint>& resume) {
  SearchOutcome out;
  const auto started = Clock::now();
  DfsState st;
  st.applied.assign(engine.depth_count(), 0);
  if (resume) {
    if (resume->config_hash != ctl.config_hash) {
      throw Error(ErrorCode::precondition,
                  "checkpoint belongs to a different search (config hash " +
                      resume->config_hash + ", expected " + ctl.config_hash + ")");
    }
    if (static_cast<int>(resume->prefix.size()) > engine.depth_count()) {
      throw Error(ErrorCode::parse, "checkpoint prefix deeper than the search tree");
    }
    out.stats = resume->stats;
    SearchStats scratch;
    for (std::size_t d = 0; d < resume->prefix.size(); ++d) {
      st.applied[d] = resume->prefix[d];
      st.depth = static_cast<int>(d) + 1;
      if (!engine.apply(static_cast<int>(d), resume->prefix[d], scratch)) {
        throw Error(ErrorCode::parse, "checkpoint prefix replays into a dead state");
      }
    }
    st.depth = static_cast<int>(resume->prefix.size());
    st.cursor = resume->cursor;
  }
  const double prior_wall = out.stats.wall_seconds;
  ctl.deadline = started + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(config.time_budget_seconds));

  if (engine.depth_count() == 0) {
    // Edgeless: the empty coloring is the only candidate.
    if (auto w = ctl.accept(engine)) {
      out.status = SearchStatus::found;
      out.witness = std::move(w);
    }
    return out;
  }

  const DfsEnd end = dfs(engine, 0, st, out.stats, ctl, out.witness);
  out.stats.wall_seconds =
      prior_wall + std::chrono::duration<double>(Clock::now() - started).count();
  switch (end) {
    case DfsEnd::found: out.status = SearchStatus::found; break;
    case DfsEnd::exhausted: out.status = SearchStatus::exhausted; break;
    case DfsEnd::budget:
    case DfsEnd::stopped:
      out.status = SearchStatus::budget_exhausted;
      if (!ctl.checkpoint_path.empty()) {
        save_checkpoint(make_checkpoint(st, out.stats, ctl), ctl.checkpoint_path);
        out.checkpoint_path = ctl.checkpoint_path;
      }
      break;
  }
  unwind(engine, st, 0);
  return out;
}

// Workers pull root choices from a shared counter; status is deterministic,
// the witness is not.
SearchOutcome run_parallel(const Engine& prototype, const SearchConfig& config,
                           DfsControl ctl) {
  const auto started = Clock::now();
  ctl.deadline = started + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(config.time_budget_seconds));
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> shared_nodes{0};
  ctl.stop = &stop;
  ctl.shared_nodes = &shared_nodes;
  ctl.checkpoint_interval = 0;
  ctl.checkpoint_path.clear();

  const auto [lo, hi] = prototype.root_range();
  std::atomic<int> next_root{lo};
  std::mutex mu;
  SearchOutcome out;
  bool any_budget = false;

  auto worker = [&]() {
    Engine engine = prototype;
    SearchStats stats;
    std::optional<BookEmbedding> witness;
    bool budget = false;
    DfsState st;
    st.applied.assign(engine.depth_count(), 0);
    while (!stop.load()) {
      const int root = next_root.fetch_add(1);
      if (root >= hi) break;
      if (shared_nodes.load() >= ctl.node_budget || Clock::now() >= ctl.deadline) {
        budget = true;
        break;
      }
      // Admissibility of the root value comes from the engine itself.
      if (engine.next_candidate(0, root, stats) != root) continue;
      ++stats.nodes;
      shared_nodes.fetch_add(1);
      st.applied[0] = root;
      st.depth = 1;
      st.cursor = 0;
      DfsEnd end = DfsEnd::exhausted;
      if (engine.apply(0, root, stats)) {
        if (engine.depth_count() == 1) {
          witness = ctl.accept(engine);
          end = witness ? DfsEnd::found : DfsEnd::exhausted;
        } else {
          end = dfs(engine, 1, st, stats, ctl, witness);
          unwind(engine, st, 1);
        }
      }
      engine.undo(0);
      if (end == DfsEnd::found) {
        stop.store(true);
        break;
      }
      if (end == DfsEnd::budget) {
        budget = true;
        break;
      }
      if (end == DfsEnd::stopped) break;
    }
    std::lock_guard<std::mutex> lock(mu);
    out.stats.add(stats);
    if (witness && !out.witness) out.witness = std::move(witness);
    any_budget = any_budget || budget;
  };

  std::vector<std::thread> threads;
  for (int w = 0; w < config.workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  if (out.witness) out.status = SearchStatus::found;
  else if (any_budget) out.status = SearchStatus::budget_exhausted;
  else out.status = SearchStatus::exhausted;
  return out;
}

void validate(const SearchConfig& config, int k) {
  if (k < 1 || k > kMaxPages) {
    throw Error(ErrorCode::precondition,
                "page budget k must be in 1.." + std::to_string(kMaxPages));
  }
  if (config.node_budget == 0 || config.time_budget_seconds <= 0) {
    throw Error(ErrorCode::precondition, "search budgets must be positive");
  }
  if (config.workers < 1) throw Error(ErrorCode::precondition, "workers must be >= 1");
  if (config.workers > 1 && !config.checkpoint_path.empty()) {
    throw Error(ErrorCode::precondition,
                "checkpointing is only supported with a single worker");
  }
}

// Returns true when k pages cannot hold g at all.
bool trivially_refuted(const Graph& g, int k, const SearchConfig& config,
                       SearchStats& stats) {
  const auto m = static_cast<long long>(g.size());
  if (m < k) return true;  // pages must be nonempty
  if (config.capacity_prune && m > static_cast<long long>(k) * (g.order() / 2)) {
    ++stats.capacity_prunes;
    return true;
  }
  return false;
}

std::optional<BookEmbedding> plain_witness(const Engine& engine) {
  const Graph& g = engine.graph();
  BookEmbedding candidate(g, engine.current_layout(),
                          fill_pages(g, engine.current_colors(), engine.pages()));
  if (!verify(candidate).valid) return std::nullopt;
  return candidate;
}

}  // namespace

SearchOutcome color_search(const Graph& g, const CyclicLayout& layout, int k,
                           const SearchConfig& config,
                           const std::optional<Checkpoint>& resume) {
  validate(config, k);
  if (layout.size() != g.order()) {
    throw Error(ErrorCode::malformed_input, "layout does not match the graph");
  }
  SearchConfig fixed = config;
  fixed.layout_mode = LayoutMode::fixed;
  SearchOutcome out;
  if (trivially_refuted(g, k, config, out.stats)) return out;

  Engine engine(g, k, layout);
  DfsControl ctl;
  ctl.node_budget = config.node_budget;
  ctl.checkpoint_interval = config.checkpoint_interval;
  ctl.checkpoint_path = config.checkpoint_path;
  ctl.config_hash = search_config_hash(g, &layout, 0, k, fixed);
  ctl.accept = plain_witness;
  return run_single(engine, fixed, ctl, resume);
}

SearchOutcome layout_search(const Graph& g, int k, const SearchConfig& config) {
  validate(config, k);
  const int n = g.order();
  SearchOutcome out;
  if (trivially_refuted(g, k, config, out.stats)) return out;
  const auto started = Clock::now();
  const auto deadline = started + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(config.time_budget_seconds));

  // Layouts up to rotation and reflection: vertex 1 first, second entry
  // smaller than the last.
  std::vector<Vertex> rest(std::max(n - 1, 0));
  std::iota(rest.begin(), rest.end(), 2);
  bool more = true;
  std::mutex mu;
  auto next_layout = [&]() -> std::optional<std::vector<Vertex>> {
    std::lock_guard<std::mutex> lock(mu);
    while (more) {
      std::vector<Vertex> order{1};
      order.insert(order.end(), rest.begin(), rest.end());
      more = std::next_permutation(rest.begin(), rest.end());
      if (n < 3 || order[1] < order[n - 1]) return order;
    }
    return std::nullopt;
  };

  std::atomic<bool> found{false};
  std::atomic<bool> budget{false};
  std::atomic<std::uint64_t> nodes{0};
  SearchConfig inner = config;
  inner.checkpoint_path.clear();
  inner.capacity_prune = false;  // already applied above

  auto worker = [&]() {
    SearchStats stats;
    std::optional<BookEmbedding> witness;
    while (!found.load() && !budget.load()) {
      auto order = next_layout();
      if (!order) break;
      const std::uint64_t spent = nodes.load();
      if (spent >= config.node_budget || Clock::now() >= deadline) {
        budget.store(true);
        break;
      }
      inner.node_budget = config.node_budget - spent;
      inner.time_budget_seconds =
          std::chrono::duration<double>(deadline - Clock::now()).count();
      if (inner.time_budget_seconds <= 0) {
        budget.store(true);
        break;
      }
      const CyclicLayout layout(*order);
      SearchOutcome one = color_search(g, layout, k, inner);
      ++stats.layouts;
      nodes.fetch_add(one.stats.nodes);
      stats.add(one.stats);
      if (one.status == SearchStatus::found) {
        witness = std::move(one.witness);
        found.store(true);
      } else if (one.status == SearchStatus::budget_exhausted) {
        budget.store(true);
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    out.stats.add(stats);
    if (witness && !out.witness) out.witness = std::move(witness);
  };

  if (config.workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < config.workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  if (out.witness) out.status = SearchStatus::found;
  else if (budget.load()) out.status = SearchStatus::budget_exhausted;
  else out.status = SearchStatus::exhausted;
  return out;
}

MbtResult mbt_exact_search(const Graph& g, int max_vertices, const SearchConfig& config) {
  if (g.order() > max_vertices) {
    throw Error(ErrorCode::too_large,
                "exact mbt refuses graphs with more than " +
                    std::to_string(max_vertices) + " vertices (got " +
                    std::to_string(g.order()) + ")");
  }
  MbtResult result;
  if (g.size() == 0) return result;
  // Pages at a vertex are pairwise adjacent, so Delta pages are necessary.
  for (int k = std::max(1, max_degree(g)); k <= static_cast<int>(g.size()); ++k) {
    SearchOutcome out = layout_search(g, k, config);
    result.stats.add(out.stats);
    if (out.status == SearchStatus::budget_exhausted) {
      throw Error(ErrorCode::too_large, "exact mbt ran out of budget at k = " +
                                            std::to_string(k));
    }
    if (out.status == SearchStatus::found) {
      result.mbt = k;
      result.witness = std::move(out.witness);
      return result;
    }
  }
  // Unreachable: one edge per page always works.
  throw Error(ErrorCode::construction_failed, "no embedding found with |E| pages");
}

int mbt_exact(const Graph& g, int max_vertices) {
  // Pure enumeration: no counting shortcut, every k is refuted by search.
  SearchConfig config;
  config.capacity_prune = false;
  return mbt_exact_search(g, max_vertices, config).mbt;
}

SearchOutcome search_extensible(const Graph& h_graph, int s, int k,
                                const SearchConfig& config,
                                const std::optional<Checkpoint>& resume) {
  validate(config, k);
  if (s < 3) throw Error(ErrorCode::precondition, "cycle factor needs s >= 3");
  if (h_graph.order() < 1 || h_graph.order() > 8) {
    throw Error(ErrorCode::precondition, "en bloc search supports 1 <= |H| <= 8");
  }
  const int t = max_degree(h_graph);
  if (config.require_extensible) {
    if (!is_regular(h_graph) || is_bipartite(h_graph)) {
      throw Error(ErrorCode::precondition,
                  "extensible search needs a regular nonbipartite H");
    }
    if (k != t + 3) {
      throw Error(ErrorCode::precondition,
                  "extensible search needs k = t + 3 = " + std::to_string(t + 3));
    }
  }
  SearchConfig bloc = config;
  bloc.layout_mode = LayoutMode::en_bloc;
  SearchOutcome out;
  const Graph product = cartesian_product(h_graph, cycle(s));
  if (trivially_refuted(product, k, config, out.stats)) return out;

  Engine engine(h_graph, s, k, config.require_extensible);
  DfsControl ctl;
  ctl.node_budget = config.node_budget;
  ctl.checkpoint_interval = config.checkpoint_interval;
  ctl.checkpoint_path = config.checkpoint_path;
  ctl.config_hash = search_config_hash(h_graph, nullptr, s, k, bloc);
  const bool need_ext = config.require_extensible;
  ctl.accept = [need_ext](const Engine& e) -> std::optional<BookEmbedding> {
    auto w = plain_witness(e);
    if (!w || !need_ext) return w;
    const ProductShape shape = e.shape();
    const ExtensibilityVerdict v = is_extensible(*w, shape.h, shape.s, shape.t);
    if (!v.extensible) return std::nullopt;
    for (int seed : v.seeds) {
      try {
        extend(*w, shape, seed, 2);
        return w;
      } catch (const Error&) {
      }
    }
    return std::nullopt;
  };
  if (config.workers > 1 && !resume) return run_parallel(engine, bloc, ctl);
  return run_single(engine, bloc, ctl, resume);
}

}  // namespace mbook
