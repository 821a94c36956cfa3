#pragma once

// Legendre duality between the flow pressure p(u) and the entropy function
// h(rho) on the interior of the direction set:
//
//     h(rho) = p(u(rho)) - <u(rho), rho>,   grad p(u(rho)) = rho,
//     hess h(rho) = -(hess p(u(rho)))^{-1}.

#include "symflow/hull.hpp"
#include "symflow/thermo.hpp"

namespace symflow {

struct DirectionHull {
  /// class / length of every prime cycle of period <= n.
  std::vector<Vec> points;
  ConvexHull hull;

  [[nodiscard]] int affine_dim() const noexcept { return hull.affine_dim(); }
  [[nodiscard]] bool contains(const Vec& rho, double tol = 1e-9) const { return hull.contains(rho, tol); }
};

DirectionHull direction_hull(const DirectedGraph& g, const WeightSystem& w, int n);

struct DirectionData {
  Vec rho;
  Vec u;
  double entropy = 0.0;
  double pressure_at_u = 0.0;
  Mat hessian_h;
  int iterations = 0;
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 200;
  double diverge_norm = 1e3;
};

/// Minimizes p(u) - <u, rho> by damped Newton from u = 0.
/// Throws OutsideCone when rho is not (numerically) interior to the
/// direction set, DegenerateModel when p is not strictly convex.
DirectionData solve_u(const DirectedGraph& g, const WeightSystem& w, const Vec& rho, const SolveOptions& opts = {});

/// -(hess p(u))^{-1} at dd.u; throws SingularHessian.
Mat entropy_hessian(const DirectedGraph& g, const WeightSystem& w, const DirectionData& dd);

enum class Membership { Inside, Outside, Indeterminate };

const char* to_string(Membership m);

Membership membership(const DirectedGraph& g, const WeightSystem& w, const Vec& rho, int n_probe = 8);

}  // namespace symflow
