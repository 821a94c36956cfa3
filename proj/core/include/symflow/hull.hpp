#pragma once

// Convex hulls of small point clouds in R^d (d <= 4 in practice). The hull is
// computed inside the affine span of the points, so degenerate clouds (all
// points collinear, or a single point) are handled uniformly.

#include <vector>

#include <Eigen/Dense>

namespace symflow {

class ConvexHull {
 public:
  ConvexHull() = default;

  /// `tol` is the collinearity / coincidence tolerance.
  explicit ConvexHull(const std::vector<Eigen::VectorXd>& points, double tol = 1e-12);

  [[nodiscard]] int ambient_dim() const noexcept { return ambient_; }
  [[nodiscard]] int affine_dim() const noexcept { return static_cast<int>(basis_.cols()); }
  [[nodiscard]] const std::vector<Eigen::VectorXd>& vertices() const noexcept { return vertices_; }

  /// Euclidean distance from x to the hull.
  [[nodiscard]] double distance(const Eigen::VectorXd& x) const;
  [[nodiscard]] bool contains(const Eigen::VectorXd& x, double tol = 1e-9) const { return distance(x) <= tol; }

 private:
  int ambient_ = 0;
  Eigen::VectorXd origin_;
  Eigen::MatrixXd basis_;  // ambient x affine_dim, orthonormal columns
  std::vector<Eigen::VectorXd> local_;     // vertices in basis coordinates
  std::vector<Eigen::VectorXd> vertices_;  // vertices in ambient coordinates
};

/// Minimum-norm point of conv(points) by Wolfe's algorithm.
Eigen::VectorXd min_norm_point(const std::vector<Eigen::VectorXd>& points, double tol = 1e-12);

}  // namespace symflow
