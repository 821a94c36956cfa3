#include "symflow/homology_weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "symflow/error.hpp"

namespace symflow {

namespace {

std::string edge_name(const Edge& e) { return std::to_string(e.from) + "->" + std::to_string(e.to); }

}  // namespace

double WeightSystem::r_min() const {
  if (roof.empty()) return 0.0;
  return *std::min_element(roof.begin(), roof.end());
}

std::vector<std::string> weight_diagnostics(const DirectedGraph& g, const WeightSystem& w) {
  std::vector<std::string> out;
  if (w.b < 0 || w.N < 0) out.push_back("b and N must be nonnegative");
  if (w.dim() < 1) out.push_back("class dimension b + N must be at least 1");
  if (w.roof.size() != g.edge_count()) out.push_back("roof is not defined on every edge");
  if (w.cls.size() != g.edge_count()) out.push_back("class is not defined on every edge");
  for (std::size_t e = 0; e < std::min(w.roof.size(), g.edge_count()); ++e) {
    if (!(w.roof[e] > 0.0) || !std::isfinite(w.roof[e]))
      out.push_back("roof must be positive on edge " + edge_name(g.edge(e)));
  }
  for (std::size_t e = 0; e < std::min(w.cls.size(), g.edge_count()); ++e) {
    if (static_cast<int>(w.cls[e].size()) != w.dim())
      out.push_back("class on edge " + edge_name(g.edge(e)) + " has dimension " + std::to_string(w.cls[e].size()) +
                    ", expected " + std::to_string(w.dim()));
  }
  return out;
}

void require_weights(const DirectedGraph& g, const WeightSystem& w) {
  if (w.roof.size() != g.edge_count() || w.cls.size() != g.edge_count())
    throw Error(ErrorCode::MissingEdgeWeight, "weights are not defined on every edge");
  for (const auto& c : w.cls)
    if (static_cast<int>(c.size()) != w.dim())
      throw Error(ErrorCode::DimensionMismatch, "class vector dimension differs from b + N");
  const auto diag = weight_diagnostics(g, w);
  if (!diag.empty()) throw Error(ErrorCode::ValidationError, diag.front());
}

std::vector<IntVector> weights_from_chords(const DirectedGraph& g, const ChordAssignment& ca, int dim) {
  const int k = g.vertex_count();
  const std::size_t n_edges = g.edge_count();
  std::vector<int> role(n_edges, 0);  // 0 unassigned, 1 tree, 2 chord

  // Union-find over vertices to check the tree spans without cycles.
  std::vector<int> parent(static_cast<std::size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };

  if (static_cast<int>(ca.tree_edges.size()) != k - 1)
    throw Error(ErrorCode::InvalidTree, "spanning tree must have exactly " + std::to_string(k - 1) + " edges");
  for (const Edge& e : ca.tree_edges) {
    if (e.from < 1 || e.from > k || e.to < 1 || e.to > k || !g.has_edge(e.from, e.to))
      throw Error(ErrorCode::InvalidTree, "tree edge " + edge_name(e) + " is not an edge of the graph");
    if (e.from == e.to) throw Error(ErrorCode::InvalidTree, "loop " + edge_name(e) + " cannot be a tree edge");
    const auto id = static_cast<std::size_t>(g.edge_id(e.from, e.to));
    if (role[id] != 0) throw Error(ErrorCode::InvalidTree, "tree edge " + edge_name(e) + " listed twice");
    const int a = find(e.from - 1);
    const int b = find(e.to - 1);
    if (a == b) throw Error(ErrorCode::InvalidTree, "tree edges contain a cycle through " + edge_name(e));
    parent[static_cast<std::size_t>(a)] = b;
    role[id] = 1;
  }

  std::vector<IntVector> cls(n_edges, IntVector(static_cast<std::size_t>(dim), 0));
  for (const auto& [e, value] : ca.chord_values) {
    if (e.from < 1 || e.from > k || e.to < 1 || e.to > k || !g.has_edge(e.from, e.to))
      throw Error(ErrorCode::MissingEdge, "chord " + edge_name(e) + " is not an edge of the graph");
    const auto id = static_cast<std::size_t>(g.edge_id(e.from, e.to));
    if (role[id] == 1) throw Error(ErrorCode::InvalidTree, "edge " + edge_name(e) + " is both tree and chord");
    if (role[id] == 2) throw Error(ErrorCode::InvalidArgument, "chord " + edge_name(e) + " listed twice");
    if (static_cast<int>(value.size()) != dim)
      throw Error(ErrorCode::DimensionMismatch, "chord " + edge_name(e) + " value has wrong dimension");
    role[id] = 2;
    cls[id] = value;
  }
  for (std::size_t id = 0; id < n_edges; ++id)
    if (role[id] == 0) throw Error(ErrorCode::MissingChordValue, "no value for chord " + edge_name(g.edge(id)));
  return cls;
}

BirkhoffData birkhoff_edges(std::span<const int> edge_ids, const WeightSystem& w) {
  BirkhoffData out;
  out.cls.assign(static_cast<std::size_t>(w.dim()), 0);
  for (const int e : edge_ids) {
    const auto id = static_cast<std::size_t>(e);
    if (id >= w.roof.size() || id >= w.cls.size())
      throw Error(ErrorCode::MissingEdgeWeight, "edge " + std::to_string(e) + " carries no weight");
    out.length += w.roof[id];
    for (std::size_t j = 0; j < out.cls.size(); ++j) out.cls[j] += w.cls[id][j];
  }
  return out;
}

BirkhoffData birkhoff(const DirectedGraph& g, const PrimeCycle& c, const WeightSystem& w) {
  const auto ids = cycle_edges(g, c);
  return birkhoff_edges(ids, w);
}

GenerationReport generation_check(const DirectedGraph& g, const WeightSystem& w, int n_probe) {
  if (n_probe < 1) throw Error(ErrorCode::InvalidArgument, "n_probe must be at least 1");
  require_weights(g, w);
  const auto d = static_cast<std::size_t>(w.dim());
  LatticeBasis basis(d);
  CycleLimits lim;
  lim.max_period = n_probe;
  for_each_prime_cycle(g, lim, [&](const CycleView& c) { basis.add(birkhoff_edges(c.edges, w).cls); });

  const SmithForm snf = basis.smith();
  GenerationReport r;
  r.rank = snf.rank;
  r.divisors = snf.divisors;
  r.generates = snf.rank == d && std::all_of(snf.divisors.begin(), snf.divisors.end(),
                                             [](std::int64_t x) { return x == 1; });
  return r;
}

std::vector<double> default_eps_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<double> lattice_length_heuristic(const DirectedGraph& g, const WeightSystem& w, int n_probe,
                                             std::span<const double> eps_grid) {
  require_weights(g, w);
  std::vector<double> lengths;
  CycleLimits lim;
  lim.max_period = n_probe;
  for_each_prime_cycle(g, lim, [&](const CycleView& c) { lengths.push_back(birkhoff_edges(c.edges, w).length); });

  constexpr double kTol = 1e-9;
  std::vector<double> flagged;
  for (const double eps : eps_grid) {
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    const bool on_lattice = std::all_of(lengths.begin(), lengths.end(), [&](double len) {
      return std::abs(len - eps * std::round(len / eps)) <= kTol;
    });
    if (on_lattice) flagged.push_back(eps);
  }
  return flagged;
}

IntVector linking_numbers(const DirectedGraph& g, const PrimeCycle& c, const WeightSystem& w) {
  if (w.N < 1) throw Error(ErrorCode::NoMeridians, "model has no meridian coordinates (N = 0)");
  const auto data = birkhoff(g, c, w);
  return {data.cls.begin() + w.b, data.cls.end()};
}

}  // namespace symflow
