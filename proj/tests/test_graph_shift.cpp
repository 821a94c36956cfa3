#include <gtest/gtest.h>

#include <map>

#include "support.hpp"
#include "symflow/error.hpp"

using namespace symflow;
using namespace symflow::testing;

namespace {

std::vector<std::vector<int>> as_words(const std::vector<PrimeCycle>& cs) {
  std::vector<std::vector<int>> out;
  for (const auto& c : cs) out.push_back(c.vertices);
  return out;
}

std::vector<std::vector<int>> sorted_words(std::vector<std::vector<int>> w) {
  std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return w;
}

// Wielandt bound: a primitive k x k pattern has A^m > 0 for some m <= (k-1)^2 + 1.
bool some_power_positive(const DirectedGraph& g) {
  const auto k = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<bool>> a(k, std::vector<bool>(k)), p;
  for (const auto& e : g.edges()) a[e.from - 1][e.to - 1] = true;
  p = a;
  for (std::size_t m = 1; m <= k * k; ++m) {
    bool all = true;
    for (const auto& row : p)
      for (const bool x : row) all = all && x;
    if (all) return true;
    std::vector<std::vector<bool>> q(k, std::vector<bool>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l)
        if (p[i][l])
          for (std::size_t j = 0; j < k; ++j) q[i][j] = q[i][j] || a[l][j];
    p = std::move(q);
  }
  return false;
}

}  // namespace

TEST(ValidateGraph, FullShiftIsValid) { EXPECT_TRUE(validate_graph(full_graph(2)).empty()); }

TEST(ValidateGraph, ReportsDegreeViolations) {
  const auto diag = validate_graph(DirectedGraph(2, {{1, 2}}));
  ASSERT_FALSE(diag.empty());
  EXPECT_NE(std::find(diag.begin(), diag.end(), "vertex 2 has out-degree 0"), diag.end());
}

TEST(ValidateGraph, ThreeCycleIsValid) { EXPECT_TRUE(validate_graph(DirectedGraph(3, {{1, 2}, {2, 3}, {3, 1}})).empty()); }

TEST(ValidateGraph, DuplicatesAndSmallGraphs) {
  EXPECT_FALSE(validate_graph(DirectedGraph(2, {{1, 1}, {1, 2}, {1, 2}, {2, 1}})).empty());
  EXPECT_FALSE(validate_graph(DirectedGraph(1, {{1, 1}})).empty());
  EXPECT_THROW(DirectedGraph(2, {{1, 3}}), Error);
}

TEST(ValidateGraph, AgreesWithReachabilityOracle) {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + trial % 4;
    std::vector<Edge> edges;
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j)
        if (coin(rng)) edges.push_back({i, j});
    const DirectedGraph g(k, edges);
    EXPECT_EQ(validate_graph(g).empty(), strongly_connected(g)) << "trial " << trial;
  }
}

TEST(Aperiodic, SpecExamples) {
  EXPECT_FALSE(is_aperiodic(DirectedGraph(2, {{1, 2}, {2, 1}})));
  EXPECT_TRUE(is_aperiodic(full_graph(2)));
  EXPECT_TRUE(is_aperiodic(golden_graph()));
  EXPECT_THROW(is_aperiodic(DirectedGraph(2, {{1, 2}})), Error);
}

TEST(Aperiodic, MatchesMatrixPowerOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_graph(rng, 2 + trial % 5, 0.15);
    EXPECT_EQ(is_aperiodic(g), some_power_positive(g)) << "trial " << trial;
  }
}

TEST(CanonicalForm, SpecExamples) {
  const auto g = full_graph(2);
  EXPECT_EQ(canonical_form(g, std::vector<int>{2, 1}).vertices, (std::vector<int>{1, 2}));
  EXPECT_EQ(canonical_form(g, std::vector<int>{2, 1, 1}).vertices, (std::vector<int>{1, 1, 2}));
  try {
    canonical_form(g, std::vector<int>{1, 2, 1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrimitive);
  }
  try {
    canonical_form(golden_graph(), std::vector<int>{2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingEdge);
  }
}

TEST(CanonicalForm, IdempotentOnEnumeratedCycles) {
  const auto g = full_graph(3);
  for (const auto& c : enumerate_prime_cycles(g, 6)) EXPECT_EQ(canonical_form(g, c.vertices), c);
}

TEST(Enumerate, SpecExamples) {
  EXPECT_EQ(as_words(enumerate_prime_cycles(full_graph(2), 2)), (std::vector<std::vector<int>>{{1}, {2}, {1, 2}}));
  const auto four = enumerate_prime_cycles(full_graph(2), 4);
  std::map<int, int> by_period;
  for (const auto& c : four) ++by_period[c.period()];
  EXPECT_EQ(four.size(), 8u);
  EXPECT_EQ(by_period, (std::map<int, int>{{1, 2}, {2, 1}, {3, 2}, {4, 3}}));
  EXPECT_EQ(as_words(enumerate_prime_cycles(golden_graph(), 3)), (std::vector<std::vector<int>>{{1}, {1, 2}, {1, 1, 2}}));
}

TEST(Enumerate, NecklaceCounts) {
  for (int k = 2; k <= 4; ++k) {
    const int n_max = k == 2 ? 14 : 7;
    std::map<int, std::int64_t> by_period;
    for (const auto& c : enumerate_prime_cycles(full_graph(k), n_max)) ++by_period[c.period()];
    for (int n = 1; n <= n_max; ++n) EXPECT_EQ(by_period[n], lyndon_count(k, n)) << "k=" << k << " n=" << n;
  }
}

TEST(Enumerate, ClosedWalkIdentity) {
  // sum_{m | n} m * P(m) = 2^n on the full 2-shift.
  std::map<int, std::int64_t> p;
  for (const auto& c : enumerate_prime_cycles(full_graph(2), 16)) ++p[c.period()];
  for (int n = 1; n <= 16; ++n) {
    std::int64_t s = 0;
    for (int m = 1; m <= n; ++m)
      if (n % m == 0) s += m * p[m];
    EXPECT_EQ(s, std::int64_t{1} << n);
  }
}

TEST(Enumerate, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(rng, 2 + trial % 4, 0.4);
    const int n = trial % 4 == 3 ? 5 : 7;
    EXPECT_EQ(as_words(enumerate_prime_cycles(g, n)), sorted_words(brute_prime_cycles(g, n))) << "trial " << trial;
  }
}

TEST(Enumerate, CycleEdgesCloseTheWalk) {
  const auto g = full_graph(3);
  for (const auto& c : enumerate_prime_cycles(g, 4)) {
    const auto ids = cycle_edges(g, c);
    ASSERT_EQ(ids.size(), c.vertices.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      EXPECT_EQ(g.edge(static_cast<std::size_t>(ids[i])).from, c.vertices[i]);
      EXPECT_EQ(g.edge(static_cast<std::size_t>(ids[i])).to, c.vertices[(i + 1) % ids.size()]);
    }
  }
}

TEST(Streaming, CostBoundMatchesFilter) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_graph(rng, 3, 0.5);
    const auto w = random_weights(rng, g, 1, 1, false);
    const double bound = 4.0 + trial * 0.3;
    std::vector<std::vector<int>> expected;
    for (const auto& c : enumerate_prime_cycles(g, 10)) {
      double len = 0.0;
      for (const int e : cycle_edges(g, c)) len += w.roof[static_cast<std::size_t>(e)];
      if (len <= bound) expected.push_back(c.vertices);
    }
    CycleLimits lim;
    lim.max_period = 10;
    lim.edge_cost = w.roof;
    lim.max_cost = bound;
    std::vector<std::vector<int>> got;
    for_each_prime_cycle(g, lim, [&](const CycleView& c) { got.emplace_back(c.vertices.begin(), c.vertices.end()); });
    EXPECT_EQ(sorted_words(got), expected) << "trial " << trial;
  }
}

TEST(Streaming, ParallelFoldIsIndependentOfThreads) {
  const auto g = full_graph(3);
  CycleLimits lim;
  lim.max_period = 9;
  auto visit = [](std::vector<std::int64_t>& acc, const CycleView& c) {
    ++acc[c.vertices.size()];
    acc[0] += c.vertices.front() * 31 + c.vertices.back();
  };
  auto merge = [](std::vector<std::int64_t>& a, std::vector<std::int64_t>&& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  };
  const std::vector<std::int64_t> init(10, 0);
  const auto one = reduce_prime_cycles(g, lim, init, visit, merge, 1);
  for (unsigned t : {2u, 3u, 8u}) EXPECT_EQ(reduce_prime_cycles(g, lim, init, visit, merge, t), one);
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(one[static_cast<std::size_t>(n)], lyndon_count(3, n));
}
