#pragma once

// Finite quotients used for Chebotarev-type statistics: either Z^d / L Z^d
// for a full-rank integer matrix L (abelian, classes are cosets), or a finite
// permutation group with one label per edge (classes are conjugacy classes
// of the product of labels along a cycle).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symflow/graph_shift.hpp"
#include "symflow/homology_weights.hpp"
#include "symflow/lattice.hpp"

namespace symflow {

/// One-line notation, 1-based: perm[i-1] is the image of i.
using Permutation = std::vector<int>;

class FiniteQuotient {
 public:
  enum class Kind { Lattice, Permutation };

  /// Z^d / L Z^d, with L given by its rows. Throws InfiniteQuotient when L is singular.
  static FiniteQuotient lattice(std::vector<IntVector> rows);
  /// Z^d / m Z^d.
  static FiniteQuotient modulus(int dim, std::int64_t m);
  /// Group generated by the per-edge labels (indexed by edge id).
  static FiniteQuotient permutations(int degree, std::vector<Permutation> edge_labels);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t order() const noexcept { return order_; }
  [[nodiscard]] std::size_t class_count() const noexcept { return class_sizes_.size(); }
  [[nodiscard]] std::size_t class_size(std::size_t c) const { return class_sizes_.at(c); }
  [[nodiscard]] const std::string& class_label(std::size_t c) const { return class_labels_.at(c); }

  /// Class of the cycle traversing `edge_ids` in order, whose homology class is `cls`.
  [[nodiscard]] std::size_t class_of(std::span<const int> edge_ids, const IntVector& cls) const;

  // Definition data, kept for serialization.
  [[nodiscard]] const std::vector<IntVector>& lattice_rows() const noexcept { return lattice_rows_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] const std::vector<Permutation>& edge_labels() const noexcept { return edge_labels_; }

  /// Checks the quotient against a model (dimension, one label per edge).
  void check_against(const DirectedGraph& g, const WeightSystem& w) const;

  /// Equal definitions (derived tables are functions of these).
  friend bool operator==(const FiniteQuotient& a, const FiniteQuotient& b) {
    return a.kind_ == b.kind_ && a.lattice_rows_ == b.lattice_rows_ && a.degree_ == b.degree_ &&
           a.edge_labels_ == b.edge_labels_;
  }

 private:
  Kind kind_ = Kind::Lattice;
  std::size_t order_ = 0;
  std::vector<std::size_t> class_sizes_;
  std::vector<std::string> class_labels_;

  // Lattice quotient.
  std::vector<IntVector> lattice_rows_;
  LatticeBasis basis_{0};
  std::vector<std::int64_t> radix_;

  // Permutation quotient.
  int degree_ = 0;
  std::vector<Permutation> edge_labels_;
  std::vector<Permutation> elements_;
  std::vector<std::vector<std::size_t>> table_;  // table_[a][b] = index of a then b
  std::vector<std::size_t> label_index_;         // edge id -> element index
  std::vector<std::size_t> class_of_element_;
  std::size_t identity_ = 0;
};

}  // namespace symflow
