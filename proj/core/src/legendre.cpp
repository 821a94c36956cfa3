#include "symflow/legendre.hpp"

#include <cmath>
#include <limits>

#include "symflow/error.hpp"

namespace symflow {

namespace {

// Below this the pressure Hessian is treated as singular. Finite-difference
// noise in the Hessian is around 1e-8.
constexpr double kMinCurvature = 1e-6;

double min_eigenvalue(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

DirectionHull direction_hull(const DirectedGraph& g, const WeightSystem& w, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  require_weights(g, w);
  DirectionHull out;
  CycleLimits lim;
  lim.max_period = n;
  for_each_prime_cycle(g, lim, [&](const CycleView& c) {
    const auto b = birkhoff_edges(c.edges, w);
    Vec p(w.dim());
    for (int j = 0; j < w.dim(); ++j) p(j) = static_cast<double>(b.cls[static_cast<std::size_t>(j)]) / b.length;
    out.points.push_back(std::move(p));
  });
  out.hull = ConvexHull(out.points);
  return out;
}

DirectionData solve_u(const DirectedGraph& g, const WeightSystem& w, const Vec& rho, const SolveOptions& opts) {
  if (rho.size() != w.dim()) throw Error(ErrorCode::DimensionMismatch, "rho has wrong dimension");
  const Vec zero = Vec::Zero(w.dim());
  if (min_eigenvalue(pressure_hessian(g, w, zero)) <= kMinCurvature)
    throw Error(ErrorCode::DegenerateModel, "pressure is not strictly convex at u = 0");

  // A trial point far out along a flat direction may defeat the pressure
  // root solve; treat it as infinitely bad so the line search backs off.
  auto objective = [&](const Vec& u, double& p) {
    try {
      p = flow_pressure(g, w, u);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonConvergence) throw;
      return std::numeric_limits<double>::infinity();
    }
    return p - u.dot(rho);
  };

  Vec u = zero;
  double p = 0.0;
  double value = objective(u, p);
  for (int it = 0; it < opts.max_iter; ++it) {
    const Vec grad = pressure_gradient(g, w, u) - rho;
    Mat H = pressure_hessian(g, w, u);
    const double lam_min = min_eigenvalue(H);
    if (grad.lpNorm<Eigen::Infinity>() <= opts.tol) {
      if (lam_min <= kMinCurvature)
        throw Error(ErrorCode::OutsideCone, "direction is on the boundary of the direction set");
      DirectionData dd;
      dd.rho = rho;
      dd.u = u;
      dd.pressure_at_u = p;
      dd.entropy = value;
      dd.hessian_h = -H.inverse();
      dd.hessian_h = 0.5 * (dd.hessian_h + dd.hessian_h.transpose()).eval();
      dd.iterations = it;
      return dd;
    }
    const double lam_max = H.cwiseAbs().maxCoeff();
    if (lam_min <= 1e-12 * std::max(1.0, lam_max)) H += 1e-10 * Mat::Identity(w.dim(), w.dim());
    const Vec step = H.ldlt().solve(-grad);
    const double slope = grad.dot(step);

    double t = 1.0;
    double p_new = 0.0;
    Vec u_new = u + step;
    double value_new = objective(u_new, p_new);
    while (!(value_new <= value + 1e-4 * t * slope)) {
      t *= 0.5;
      if (t < 1e-12) throw Error(ErrorCode::OutsideCone, "line search stalled away from a stationary point");
      u_new = u + t * step;
      value_new = objective(u_new, p_new);
    }
    u = std::move(u_new);
    p = p_new;
    value = value_new;
    if (u.norm() > opts.diverge_norm) throw Error(ErrorCode::OutsideCone, "dual parameter diverged");
  }
  throw Error(ErrorCode::OutsideCone, "Newton iteration did not reach a stationary point");
}

Mat entropy_hessian(const DirectedGraph& g, const WeightSystem& w, const DirectionData& dd) {
  const Mat H = pressure_hessian(g, w, dd.u);
  if (min_eigenvalue(H) <= kMinCurvature) throw Error(ErrorCode::SingularHessian, "pressure Hessian is singular");
  const Mat inv = -H.inverse();
  return 0.5 * (inv + inv.transpose());
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "Inside";
    case Membership::Outside: return "Outside";
    case Membership::Indeterminate: return "Indeterminate";
  }
  return "?";
}

Membership membership(const DirectedGraph& g, const WeightSystem& w, const Vec& rho, int n_probe) {
  try {
    solve_u(g, w, rho);
    return Membership::Inside;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OutsideCone && e.code() != ErrorCode::DegenerateModel &&
        e.code() != ErrorCode::NonConvergence)
      throw;
  }
  const auto hull = direction_hull(g, w, n_probe);
  return hull.contains(rho) ? Membership::Indeterminate : Membership::Outside;
}

}  // namespace symflow
