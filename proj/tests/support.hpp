#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "symflow/graph_shift.hpp"
#include "symflow/homology_weights.hpp"

namespace symflow::testing {

inline DirectedGraph full_graph(int k) {
  std::vector<Edge> edges;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) edges.push_back({i, j});
  return DirectedGraph(k, edges);
}

inline DirectedGraph golden_graph() { return DirectedGraph(2, {{1, 1}, {1, 2}, {2, 1}}); }

/// Full 2-shift, roof 1, class 1 on edges into vertex 2.
inline WeightSystem into2_weights(const DirectedGraph& g, std::int64_t scale = 1) {
  WeightSystem w{0, 1, {}, {}};
  for (const auto& e : g.edges()) {
    w.roof.push_back(1.0);
    w.cls.push_back({e.to == 2 ? scale : 0});
  }
  return w;
}

inline WeightSystem zero_weights(const DirectedGraph& g, int d) {
  WeightSystem w{0, d, std::vector<double>(g.edge_count(), 1.0),
                 std::vector<IntVector>(g.edge_count(), IntVector(static_cast<std::size_t>(d), 0))};
  return w;
}

/// Boolean reachability closure; oracle for strong connectivity.
inline bool strongly_connected(const DirectedGraph& g) {
  const int k = g.vertex_count();
  std::vector<std::vector<bool>> r(static_cast<std::size_t>(k), std::vector<bool>(static_cast<std::size_t>(k)));
  for (const auto& e : g.edges()) r[e.from - 1][e.to - 1] = true;
  for (int m = 0; m < k; ++m)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (r[i][m] && r[m][j]) r[i][j] = true;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (!r[i][j]) return false;
  return true;
}

/// Random strongly connected graph on k vertices: a Hamiltonian cycle plus extra edges.
inline DirectedGraph random_graph(std::mt19937_64& rng, int k, double density) {
  std::set<Edge> edges;
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < k; ++i) edges.insert({perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>((i + 1) % k)]});
  std::bernoulli_distribution coin(density);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (coin(rng)) edges.insert({i, j});
  return DirectedGraph(k, {edges.begin(), edges.end()});
}

inline WeightSystem random_weights(std::mt19937_64& rng, const DirectedGraph& g, int d, int spread, bool unit_roof) {
  std::uniform_int_distribution<int> cls(-spread, spread);
  std::uniform_real_distribution<double> roof(0.5, 2.0);
  WeightSystem w{0, d, {}, {}};
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    w.roof.push_back(unit_roof ? 1.0 : roof(rng));
    IntVector c;
    for (int j = 0; j < d; ++j) c.push_back(cls(rng));
    w.cls.push_back(std::move(c));
  }
  return w;
}

/// Every prime cycle of period <= n, by brute force over vertex words:
/// keep a closed walk iff it is primitive and minimal among its rotations.
inline std::vector<std::vector<int>> brute_prime_cycles(const DirectedGraph& g, int n) {
  std::vector<std::vector<int>> out;
  const int k = g.vertex_count();
  for (int len = 1; len <= n; ++len) {
    std::vector<int> w(static_cast<std::size_t>(len), 1);
    for (;;) {
      bool closed = true;
      for (int i = 0; i < len && closed; ++i) closed = g.has_edge(w[i], w[(i + 1) % len]);
      if (closed) {
        bool minimal = true;
        bool primitive = true;
        for (int s = 1; s < len; ++s) {
          std::vector<int> rot(w.begin() + s, w.end());
          rot.insert(rot.end(), w.begin(), w.begin() + s);
          if (rot < w) minimal = false;
          if (rot == w) primitive = false;
        }
        if (minimal && primitive) out.push_back(w);
      }
      int i = len - 1;
      while (i >= 0 && w[i] == k) w[i--] = 1;
      if (i < 0) break;
      ++w[i];
    }
  }
  return out;
}

/// Classic necklace formula: primitive necklaces of length n over k letters.
inline std::int64_t lyndon_count(int k, int n) {
  auto mu = [](int m) {
    int r = 1;
    for (int p = 2; p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      r = -r;
    }
    return r;
  };
  std::int64_t total = 0;
  for (int dd = 1; dd <= n; ++dd) {
    if (n % dd) continue;
    std::int64_t pw = 1;
    for (int i = 0; i < n / dd; ++i) pw *= k;
    total += mu(dd) * pw;
  }
  return total / n;
}

}  // namespace symflow::testing
