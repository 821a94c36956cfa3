#include "symflow/graph_shift.hpp"

#include <numeric>
#include <queue>
#include <sstream>

#include "symflow/error.hpp"

namespace symflow {

DirectedGraph::DirectedGraph(int vertex_count, std::vector<Edge> edges)
    : k_(vertex_count), edges_(std::move(edges)) {
  if (k_ < 1) throw Error(ErrorCode::InvalidGraph, "vertex count must be positive");
  index_.assign(static_cast<std::size_t>(k_) * static_cast<std::size_t>(k_), -1);
  succ_.resize(static_cast<std::size_t>(k_));
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto [from, to] = edges_[id];
    if (from < 1 || from > k_ || to < 1 || to > k_) {
      std::ostringstream os;
      os << "edge " << from << "->" << to << " references a vertex outside 1.." << k_;
      throw Error(ErrorCode::InvalidGraph, os.str());
    }
    int& slot = index_[static_cast<std::size_t>((from - 1) * k_ + (to - 1))];
    if (slot < 0) {
      slot = static_cast<int>(id);
      succ_[static_cast<std::size_t>(from - 1)].push_back(to);
    }
  }
  for (auto& s : succ_) std::sort(s.begin(), s.end());
}

namespace {

std::vector<bool> reachable(const DirectedGraph& g, int start, bool reverse) {
  const int k = g.vertex_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
  for (const Edge& e : g.edges()) {
    if (reverse)
      adj[static_cast<std::size_t>(e.to - 1)].push_back(e.from);
    else
      adj[static_cast<std::size_t>(e.from - 1)].push_back(e.to);
  }
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start - 1)] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const int w : adj[static_cast<std::size_t>(v - 1)]) {
      if (!seen[static_cast<std::size_t>(w - 1)]) {
        seen[static_cast<std::size_t>(w - 1)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<std::string> validate_graph(const DirectedGraph& g) {
  std::vector<std::string> out;
  const int k = g.vertex_count();
  if (k < 2) out.push_back("vertex count must be at least 2");

  std::vector<int> outdeg(static_cast<std::size_t>(k), 0), indeg(static_cast<std::size_t>(k), 0);
  std::vector<Edge> sorted(g.edges().begin(), g.edges().end());
  for (const Edge& e : sorted) {
    ++outdeg[static_cast<std::size_t>(e.from - 1)];
    ++indeg[static_cast<std::size_t>(e.to - 1)];
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1] && (i == 1 || sorted[i - 2] != sorted[i])) {
      std::ostringstream os;
      os << "duplicate edge " << sorted[i].from << "->" << sorted[i].to;
      out.push_back(os.str());
    }
  }
  for (int v = 1; v <= k; ++v) {
    if (outdeg[static_cast<std::size_t>(v - 1)] == 0)
      out.push_back("vertex " + std::to_string(v) + " has out-degree 0");
    if (indeg[static_cast<std::size_t>(v - 1)] == 0)
      out.push_back("vertex " + std::to_string(v) + " has in-degree 0");
  }
  const auto fwd = reachable(g, 1, false);
  const auto bwd = reachable(g, 1, true);
  const bool connected = std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
                         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
  if (!connected) out.push_back("graph is not strongly connected");
  return out;
}

void require_valid(const DirectedGraph& g) {
  const auto diag = validate_graph(g);
  if (diag.empty()) return;
  std::string msg;
  for (const auto& d : diag) {
    if (!msg.empty()) msg += "; ";
    msg += d;
  }
  throw Error(ErrorCode::InvalidGraph, msg);
}

int graph_period(const DirectedGraph& g) {
  require_valid(g);
  // BFS levels; the period is the gcd of level(u) + 1 - level(v) over all edges.
  const int k = g.vertex_count();
  std::vector<int> level(static_cast<std::size_t>(k), -1);
  std::queue<int> q;
  level[0] = 0;
  q.push(1);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const int w : g.successors(v)) {
      if (level[static_cast<std::size_t>(w - 1)] < 0) {
        level[static_cast<std::size_t>(w - 1)] = level[static_cast<std::size_t>(v - 1)] + 1;
        q.push(w);
      }
    }
  }
  int period = 0;
  for (const Edge& e : g.edges()) {
    const int diff = level[static_cast<std::size_t>(e.from - 1)] + 1 - level[static_cast<std::size_t>(e.to - 1)];
    period = std::gcd(period, diff < 0 ? -diff : diff);
  }
  return period;
}

bool is_aperiodic(const DirectedGraph& g) { return graph_period(g) == 1; }

PrimeCycle canonical_form(const DirectedGraph& g, std::span<const int> vertices) {
  const std::size_t n = vertices.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty vertex sequence");
  for (std::size_t m = 0; m < n; ++m) {
    const int a = vertices[m];
    const int b = vertices[(m + 1) % n];
    if (a < 1 || a > g.vertex_count() || b < 1 || b > g.vertex_count() || !g.has_edge(a, b)) {
      throw Error(ErrorCode::MissingEdge,
                  "transition " + std::to_string(a) + "->" + std::to_string(b) + " is not an edge");
    }
  }
  // Smallest period p dividing n with v[i] == v[i+p].
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = 0; i + p < n && repeats; ++i) repeats = vertices[i] == vertices[i + p];
    if (repeats) {
      throw Error(ErrorCode::NotPrimitive,
                  "sequence is a " + std::to_string(n / p) + "-fold repetition of a shorter cycle");
    }
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const int a = vertices[(r + i) % n];
      const int b = vertices[(best + i) % n];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  PrimeCycle c;
  c.vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.vertices.push_back(vertices[(best + i) % n]);
  return c;
}

std::vector<int> cycle_edges(const DirectedGraph& g, const PrimeCycle& c) {
  std::vector<int> ids;
  const std::size_t n = c.vertices.size();
  ids.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    const int id = g.edge_id(c.vertices[m], c.vertices[(m + 1) % n]);
    if (id < 0) {
      throw Error(ErrorCode::MissingEdge, "transition " + std::to_string(c.vertices[m]) + "->" +
                                              std::to_string(c.vertices[(m + 1) % n]) + " is not an edge");
    }
    ids.push_back(id);
  }
  return ids;
}

std::vector<PrimeCycle> enumerate_prime_cycles(const DirectedGraph& g, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  std::vector<PrimeCycle> out;
  CycleLimits lim;
  lim.max_period = n_max;
  for_each_prime_cycle(g, lim, [&](const CycleView& c) {
    out.push_back(PrimeCycle{{c.vertices.begin(), c.vertices.end()}});
  });
  std::sort(out.begin(), out.end(), cycle_less);
  return out;
}

namespace detail {

CycleSearch::CycleSearch(const DirectedGraph& g, const CycleLimits& lim) : g_(g), lim_(lim) {
  if (cost_bounded()) {
    if (lim_.edge_cost.size() != g.edge_count())
      throw Error(ErrorCode::DimensionMismatch, "edge cost vector does not match edge count");
    min_cost_ = *std::min_element(lim_.edge_cost.begin(), lim_.edge_cost.end());
  }
}

}  // namespace detail

}  // namespace symflow
