#include "symflow/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "symflow/error.hpp"

namespace symflow {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer addition overflow");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer multiplication overflow");
  return r;
}

}  // namespace checked

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

namespace {

// Returns g = gcd(a, b) >= 0 with x*a + y*b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

// row_a <- x*a + y*b, row_b <- u*a + v*b
void combine(IntVector& a, IntVector& b, std::int64_t x, std::int64_t y, std::int64_t u, std::int64_t v) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::int64_t na = checked::add(checked::mul(x, a[j]), checked::mul(y, b[j]));
    const std::int64_t nb = checked::add(checked::mul(u, a[j]), checked::mul(v, b[j]));
    a[j] = na;
    b[j] = nb;
  }
}

void axpy(IntVector& dst, std::int64_t q, const IntVector& src) {
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = checked::add(dst[j], checked::mul(-q, src[j]));
}

}  // namespace

void LatticeBasis::add(IntVector v) {
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "lattice vector has wrong dimension");
  auto leading = [&] {
    auto it = std::find_if(v.begin(), v.end(), [](std::int64_t c) { return c != 0; });
    return static_cast<std::size_t>(it - v.begin());
  };
  std::size_t i = 0;
  for (std::size_t lead = leading(); i < rows_.size() && lead < dim_; lead = leading()) {
    const std::size_t p = pivots_[i];
    if (lead < p) break;
    if (lead > p) {
      ++i;
      continue;
    }
    std::int64_t x = 0, y = 0;
    const std::int64_t a = rows_[i][p];
    const std::int64_t b = v[p];
    const std::int64_t g = ext_gcd(a, b, x, y);
    combine(rows_[i], v, x, y, -(b / g), a / g);
    for (std::size_t r = 0; r < i; ++r) {
      const std::int64_t q = floor_div(rows_[r][p], rows_[i][p]);
      if (q != 0) axpy(rows_[r], q, rows_[i]);
    }
    ++i;
  }
  const std::size_t p = leading();
  if (p == dim_) return;
  if (v[p] < 0)
    for (auto& c : v) c = -c;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(i), std::move(v));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(i), p);
  for (std::size_t r = 0; r < i; ++r) {
    const std::int64_t q = floor_div(rows_[r][p], rows_[i][p]);
    if (q != 0) axpy(rows_[r], q, rows_[i]);
  }
  for (std::size_t r = i + 1; r < rows_.size(); ++r) {
    const std::size_t pr = pivots_[r];
    const std::int64_t q = floor_div(rows_[i][pr], rows_[r][pr]);
    if (q != 0) axpy(rows_[i], q, rows_[r]);
  }
}

IntVector LatticeBasis::reduce(IntVector v) const {
  if (!full_rank()) throw Error(ErrorCode::InfiniteQuotient, "lattice is not of full rank");
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "vector has wrong dimension");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::int64_t q = floor_div(v[i], rows_[i][i]);
    if (q != 0) axpy(v, q, rows_[i]);
  }
  return v;
}

std::int64_t LatticeBasis::index() const {
  if (!full_rank()) throw Error(ErrorCode::InfiniteQuotient, "lattice is not of full rank");
  std::int64_t n = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) n = checked::mul(n, rows_[i][i]);
  return n;
}

SmithForm smith_normal_form(const std::vector<IntVector>& rows, std::size_t cols) {
  // Reduce to at most `cols` rows first; the row lattice is unchanged.
  LatticeBasis basis(cols);
  for (const auto& r : rows) basis.add(r);
  std::vector<IntVector> a = basis.rows();
  const std::size_t m = a.size();
  const std::size_t n = cols;

  SmithForm out;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Move the smallest nonzero |entry| of the trailing block to (t, t).
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (bi == m || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m) {
        out.rank = t;
        return out;
      }
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        const std::int64_t q = a[i][t] / a[t][t];
        if (q != 0) axpy(a[i], q, a[t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        const std::int64_t q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < m; ++i) a[i][j] = checked::add(a[i][j], checked::mul(-q, a[i][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any offending row into row t and retry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t c = 0; c < n; ++c) a[t][c] = checked::add(a[t][c], a[i][c]);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    out.divisors.push_back(std::llabs(a[t][t]));
    out.rank = t + 1;
  }
  return out;
}

}  // namespace symflow
