#pragma once

// Thermodynamic formalism for locally constant potentials on a subshift of
// finite type and for the suspension flow under a roof function.
//
// For the potential <u, class> - s * roof the shift pressure is the log of
// the Perron eigenvalue of the weighted adjacency matrix
//
//     M(u, s)_ij = exp(<u, class(i->j)> - s * roof(i->j)),
//
// and the flow pressure p(u) is the unique s with shift pressure zero.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "symflow/graph_shift.hpp"
#include "symflow/homology_weights.hpp"

namespace symflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct PerronData {
  double eigenvalue = 0.0;
  /// Entrywise positive, max entry 1.
  Vec right;
  /// Entrywise positive, left . right = 1.
  Vec left;
  long iterations = 0;
};

struct PerronOptions {
  double tol = 1e-12;
  long max_iter = 1'000'000;
};

/// Markov measure on edges: transition[i][j] supported on edges,
/// edge_measure indexed by edge id.
struct MarkovMeasure {
  Vec stationary;
  Mat transition;
  std::vector<double> edge_measure;
};

Mat transfer_matrix(const DirectedGraph& g, const WeightSystem& w, const Vec& u, double s);

/// Dominant eigen-triple of a primitive nonnegative matrix by power
/// iteration, stopped when the Collatz-Wielandt bounds
/// min_i (Mx)_i/x_i <= lambda <= max_i (Mx)_i/x_i agree to `tol` relatively.
/// Throws NotPrimitive when the support pattern is reducible or periodic.
PerronData perron(const Mat& M, const PerronOptions& opts = {});

double shift_pressure(const DirectedGraph& g, const WeightSystem& w, const Vec& u, double s);

/// Root s of shift_pressure(u, s) = 0, to absolute tolerance 1e-10.
double flow_pressure(const DirectedGraph& g, const WeightSystem& w, const Vec& u);

/// Integral of the class vector against the equilibrium state of <u, F>.
Vec pressure_gradient(const DirectedGraph& g, const WeightSystem& w, const Vec& u);

/// Central differences of pressure_gradient, step max(1e-5, 1e-5 |u_j|), symmetrized.
Mat pressure_hessian(const DirectedGraph& g, const WeightSystem& w, const Vec& u);

MarkovMeasure equilibrium_measure(const DirectedGraph& g, const WeightSystem& w, const Vec& u);

/// (sum_e m(e) phi(e)) / (sum_e m(e) roof(e)): the flow-invariant integral of
/// an observable given by its per-edge fibre integrals phi.
double integrate_observable(const MarkovMeasure& mm, const WeightSystem& w, std::span<const double> phi);

/// Kolmogorov-Sinai entropy of a Markov measure for the shift:
/// -sum_i pi_i sum_j P_ij log P_ij.
double markov_entropy(const MarkovMeasure& mm);

/// Eigen-Markov measure of an arbitrary primitive matrix M supported on g.
MarkovMeasure markov_measure_of(const DirectedGraph& g, const Mat& M);

}  // namespace symflow
