#pragma once

// Integer lattices in Z^d: incremental Hermite echelon bases and Smith normal
// form. All arithmetic is checked; overflow throws ErrorCode::Overflow.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace symflow {

using IntVector = std::vector<std::int64_t>;

struct SmithForm {
  std::size_t rank = 0;
  /// Nonzero elementary divisors, each dividing the next.
  std::vector<std::int64_t> divisors;
};

/// Smith normal form of the matrix whose rows are `rows` (all of length cols).
SmithForm smith_normal_form(const std::vector<IntVector>& rows, std::size_t cols);

/// Sublattice of Z^d spanned by the vectors added so far, kept as a row
/// echelon basis with positive pivots and entries above each pivot reduced
/// into [0, pivot).
class LatticeBasis {
 public:
  explicit LatticeBasis(std::size_t dim) : dim_(dim) {}

  void add(IntVector v);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }
  [[nodiscard]] bool full_rank() const noexcept { return rows_.size() == dim_; }
  [[nodiscard]] const std::vector<IntVector>& rows() const noexcept { return rows_; }

  /// Unique coset representative of v modulo the lattice, with coordinate i
  /// in [0, pivot_i). Requires full rank.
  [[nodiscard]] IntVector reduce(IntVector v) const;

  /// Index [Z^d : L] (product of pivots). Requires full rank.
  [[nodiscard]] std::int64_t index() const;

  [[nodiscard]] SmithForm smith() const { return smith_normal_form(rows_, dim_); }

 private:
  std::size_t dim_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
};

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
}  // namespace checked

/// Floor division for signed integers (rounds toward negative infinity).
std::int64_t floor_div(std::int64_t a, std::int64_t b);

}  // namespace symflow
