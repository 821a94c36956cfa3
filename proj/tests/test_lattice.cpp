#include <gtest/gtest.h>

#include <limits>
#include <numeric>
#include <random>

#include "symflow/error.hpp"
#include "symflow/lattice.hpp"

using namespace symflow;

namespace {

using Matrix = std::vector<IntVector>;

std::int64_t det(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  std::int64_t total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      IntVector row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    total += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
  }
  return total;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Determinantal divisors: d_k = gcd of all k x k minors; invariant factors d_k / d_{k-1}.
std::vector<std::int64_t> invariant_factors(const Matrix& m, std::size_t cols) {
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  for (std::size_t k = 1; k <= std::min(m.size(), cols); ++k) {
    std::int64_t g = 0;
    for (const auto& rs : subsets(m.size(), k))
      for (const auto& cs : subsets(cols, k)) {
        Matrix sub;
        for (const auto r : rs) {
          IntVector row;
          for (const auto c : cs) row.push_back(m[r][c]);
          sub.push_back(std::move(row));
        }
        g = std::gcd(g, det(sub));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int spread) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  Matrix m(rows, IntVector(cols));
  for (auto& r : m)
    for (auto& x : r) x = dist(rng);
  return m;
}

}  // namespace

TEST(Smith, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t rows = 1 + trial % 4;
    const std::size_t cols = 1 + (trial / 4) % 4;
    const auto m = random_matrix(rng, rows, cols, trial % 3 == 0 ? 2 : 6);
    const auto expected = invariant_factors(m, cols);
    const auto snf = smith_normal_form(m, cols);
    EXPECT_EQ(snf.rank, expected.size()) << "trial " << trial;
    EXPECT_EQ(snf.divisors, expected) << "trial " << trial;
  }
}

TEST(Smith, SimpleCases) {
  EXPECT_EQ(smith_normal_form({{0}, {1}}, 1).divisors, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(smith_normal_form({{0}, {2}}, 1).divisors, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(smith_normal_form({{0}, {0}}, 1).rank, 0u);
  EXPECT_EQ(smith_normal_form({{2, 0}, {0, 3}}, 2).divisors, (std::vector<std::int64_t>{1, 6}));
}

TEST(LatticeBasis, IndexAndRankAgreeWithOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const std::size_t n = 1 + trial % 5;
    const auto gens = random_matrix(rng, n, d, 5);
    LatticeBasis b(d);
    for (const auto& v : gens) b.add(v);
    const auto inv = invariant_factors(gens, d);
    ASSERT_EQ(b.rank(), inv.size()) << "trial " << trial;
    if (b.full_rank()) {
      const std::int64_t index = std::accumulate(inv.begin(), inv.end(), std::int64_t{1}, std::multiplies<>());
      EXPECT_EQ(b.index(), index) << "trial " << trial;
      EXPECT_EQ(b.smith().divisors, inv);
    }
  }
}

TEST(LatticeBasis, ReduceGivesCanonicalCosetRepresentatives) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> dist(-40, 40);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto gens = random_matrix(rng, d + 1, d, 4);
    LatticeBasis b(d);
    for (const auto& v : gens) b.add(v);
    if (!b.full_rank()) continue;
    for (const auto& g : gens) EXPECT_EQ(b.reduce(g), IntVector(d, 0));
    for (int k = 0; k < 20; ++k) {
      IntVector v(d);
      for (auto& x : v) x = dist(rng);
      const IntVector r = b.reduce(v);
      EXPECT_EQ(b.reduce(r), r);
      for (std::size_t i = 0; i < d; ++i) {
        EXPECT_GE(r[i], 0);
        EXPECT_LT(r[i], b.rows()[i][i]);
      }
      for (const auto& g : gens) {
        IntVector shifted = v;
        for (std::size_t i = 0; i < d; ++i) shifted[i] -= 3 * g[i];
        EXPECT_EQ(b.reduce(shifted), r);
      }
    }
  }
}

TEST(Checked, OverflowThrows) {
  constexpr auto big = std::numeric_limits<std::int64_t>::max();
  try {
    checked::add(big, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
  EXPECT_THROW(checked::mul(big / 2, 3), Error);
  EXPECT_EQ(checked::mul(-4, 5), -20);
}

TEST(Checked, FloorDivision) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, -2), -4);
  EXPECT_EQ(floor_div(-8, 2), -4);
}
