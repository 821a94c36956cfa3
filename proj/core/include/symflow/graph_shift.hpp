#pragma once

// Directed coding graphs for subshifts of finite type and enumeration of their
// prime periodic orbits. Vertices are 1-based everywhere in the public API.

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace symflow {

struct Edge {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Throws InvalidGraph only when an edge references a vertex outside
  /// 1..vertex_count; every other defect is left for validate_graph to report.
  DirectedGraph(int vertex_count, std::vector<Edge> edges);

  [[nodiscard]] int vertex_count() const noexcept { return k_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  [[nodiscard]] const Edge& edge(std::size_t id) const { return edges_.at(id); }

  /// Index of edge from->to in edges(), or -1.
  [[nodiscard]] int edge_id(int from, int to) const noexcept {
    return index_[static_cast<std::size_t>((from - 1) * k_ + (to - 1))];
  }
  [[nodiscard]] bool has_edge(int from, int to) const noexcept { return edge_id(from, to) >= 0; }

  /// Targets of edges leaving v, ascending.
  [[nodiscard]] std::span<const int> successors(int v) const { return succ_.at(static_cast<std::size_t>(v - 1)); }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.k_ == b.k_ && a.edges_ == b.edges_;
  }

 private:
  int k_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> index_;
  std::vector<std::vector<int>> succ_;
};

/// A prime periodic orbit of the shift, stored as its lexicographically
/// minimal rotation (a Lyndon word over the vertex alphabet).
struct PrimeCycle {
  std::vector<int> vertices;

  [[nodiscard]] int period() const noexcept { return static_cast<int>(vertices.size()); }

  friend bool operator==(const PrimeCycle&, const PrimeCycle&) = default;
};

/// Enumeration order: by period, then lexicographically.
inline bool cycle_less(const PrimeCycle& a, const PrimeCycle& b) {
  if (a.period() != b.period()) return a.period() < b.period();
  return a.vertices < b.vertices;
}

std::vector<std::string> validate_graph(const DirectedGraph& g);

/// Throws InvalidGraph carrying the joined diagnostics if g is not valid.
void require_valid(const DirectedGraph& g);

/// gcd of the cycle lengths of a strongly connected graph.
int graph_period(const DirectedGraph& g);

bool is_aperiodic(const DirectedGraph& g);

PrimeCycle canonical_form(const DirectedGraph& g, std::span<const int> vertices);

/// Edge ids traversed by the cycle, including the closing edge back to the start.
std::vector<int> cycle_edges(const DirectedGraph& g, const PrimeCycle& c);

std::vector<PrimeCycle> enumerate_prime_cycles(const DirectedGraph& g, int n_max);

// ---------------------------------------------------------------------------
// Streaming enumeration.
//
// The search walks Lyndon-word prefixes: a word extends by x only if
// x >= word[t - p] (p = current period of the prefix), and a closed word is
// reported when p equals its length. Every canonical primitive cycle is
// produced exactly once and nothing else is.

struct CycleLimits {
  int max_period = 1;
  /// Optional per-edge cost (indexed by edge id). When non-empty, only cycles
  /// whose summed cost is <= max_cost are reported.
  std::span<const double> edge_cost{};
  double max_cost = std::numeric_limits<double>::infinity();
};

struct CycleView {
  std::span<const int> vertices;
  /// Edge ids in traversal order, closing edge last.
  std::span<const int> edges;
  /// Sum of edge_cost in traversal order (0 when no cost is configured).
  double cost = 0.0;
};

namespace detail {

struct SearchState {
  std::vector<int> word;
  std::vector<int> edge_ids;
  int period = 1;
  double cost = 0.0;
};

class CycleSearch {
 public:
  CycleSearch(const DirectedGraph& g, const CycleLimits& lim);

  [[nodiscard]] bool cost_bounded() const noexcept { return !lim_.edge_cost.empty(); }

  /// Depth-first search below `s`. Nodes at depth `split_depth` are handed to
  /// `on_split` instead of being explored (pass 0 to disable splitting).
  template <class Visit, class OnSplit>
  void run(SearchState& s, Visit& visit, std::size_t split_depth, OnSplit& on_split) const {
    const std::size_t t = s.word.size();
    if (split_depth != 0 && t == split_depth) {
      on_split(s);
      return;
    }
    if (static_cast<std::size_t>(s.period) == t) {
      const int close = g_.edge_id(s.word.back(), s.word.front());
      if (close >= 0) {
        const double total = cost_bounded() ? s.cost + lim_.edge_cost[static_cast<std::size_t>(close)] : 0.0;
        if (!cost_bounded() || total <= lim_.max_cost) {
          s.edge_ids.push_back(close);
          visit(CycleView{s.word, s.edge_ids, total});
          s.edge_ids.pop_back();
        }
      }
    }
    if (t >= static_cast<std::size_t>(lim_.max_period)) return;
    // Any extension adds one edge and then needs a closing edge.
    if (cost_bounded() && (s.cost + min_cost_) + min_cost_ > lim_.max_cost) return;

    const int anchor = s.word[t - static_cast<std::size_t>(s.period)];
    for (const int x : g_.successors(s.word.back())) {
      if (x < anchor) continue;
      const int e = g_.edge_id(s.word.back(), x);
      const double before = s.cost;
      const int before_period = s.period;
      if (cost_bounded()) s.cost += lim_.edge_cost[static_cast<std::size_t>(e)];
      if (x != anchor) s.period = static_cast<int>(t) + 1;
      s.word.push_back(x);
      s.edge_ids.push_back(e);
      run(s, visit, split_depth, on_split);
      s.word.pop_back();
      s.edge_ids.pop_back();
      s.period = before_period;
      s.cost = before;
    }
  }

  [[nodiscard]] const DirectedGraph& graph() const noexcept { return g_; }

 private:
  const DirectedGraph& g_;
  CycleLimits lim_;
  double min_cost_ = 0.0;
};

}  // namespace detail

/// Calls visit(const CycleView&) once per prime cycle within `lim`.
template <class Visit>
void for_each_prime_cycle(const DirectedGraph& g, const CycleLimits& lim, Visit&& visit) {
  detail::CycleSearch search(g, lim);
  auto no_split = [](detail::SearchState&) {};
  for (int v = 1; v <= g.vertex_count(); ++v) {
    detail::SearchState s;
    s.word = {v};
    search.run(s, visit, 0, no_split);
  }
}

/// Parallel fold over prime cycles. The search is partitioned into prefix
/// jobs, each folded into its own copy of `init` with
/// visit(Acc&, const CycleView&); partial results are merged with
/// merge(Acc& into, Acc&& from) in a fixed job order, so the result does not
/// depend on thread scheduling.
template <class Acc, class Visit, class Merge>
Acc reduce_prime_cycles(const DirectedGraph& g, const CycleLimits& lim, const Acc& init, Visit visit, Merge merge,
                        unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  detail::CycleSearch search(g, lim);

  Acc head = init;
  auto visit_head = [&](const CycleView& c) { visit(head, c); };
  if (threads == 1) {
    auto no_split = [](detail::SearchState&) {};
    for (int v = 1; v <= g.vertex_count(); ++v) {
      detail::SearchState s;
      s.word = {v};
      search.run(s, visit_head, 0, no_split);
    }
    return head;
  }

  // Grow the split depth until there are enough jobs to balance the threads.
  std::vector<detail::SearchState> jobs;
  std::size_t depth = 1;
  for (;;) {
    jobs.clear();
    Acc scratch = init;
    auto visit_scratch = [&](const CycleView& c) { visit(scratch, c); };
    auto collect = [&](detail::SearchState& s) { jobs.push_back(s); };
    for (int v = 1; v <= g.vertex_count(); ++v) {
      detail::SearchState s;
      s.word = {v};
      search.run(s, visit_scratch, depth, collect);
    }
    if (jobs.size() >= 4 * threads || depth >= static_cast<std::size_t>(lim.max_period) || depth >= 6) {
      head = std::move(scratch);
      break;
    }
    ++depth;
  }

  std::vector<Acc> partial(jobs.size(), init);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    auto no_split = [](detail::SearchState&) {};
    for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
      Acc& acc = partial[j];
      auto visit_job = [&](const CycleView& c) { visit(acc, c); };
      detail::SearchState s = jobs[j];
      search.run(s, visit_job, 0, no_split);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  pool.clear();

  for (auto& p : partial) merge(head, std::move(p));
  return head;
}

}  // namespace symflow
