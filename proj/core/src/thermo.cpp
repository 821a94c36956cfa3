#include "symflow/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symflow/error.hpp"

namespace symflow {

namespace {

void require_primitive(const Mat& M) {
  const auto n = static_cast<int>(M.rows());
  if (M.rows() != M.cols() || n < 1) throw Error(ErrorCode::DimensionMismatch, "matrix must be square and nonempty");
  if ((M.array() < 0.0).any() || !M.allFinite())
    throw Error(ErrorCode::InvalidArgument, "matrix must be finite and nonnegative");
  if (n == 1) {
    if (M(0, 0) > 0.0) return;
    throw Error(ErrorCode::NotPrimitive, "1x1 zero matrix");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (M(i, j) > 0.0) edges.push_back({i + 1, j + 1});
  const DirectedGraph pattern(n, std::move(edges));
  if (!validate_graph(pattern).empty()) throw Error(ErrorCode::NotPrimitive, "support pattern is not irreducible");
  if (!is_aperiodic(pattern)) throw Error(ErrorCode::NotPrimitive, "support pattern is periodic");
}

// Power iteration for the dominant eigenvalue and positive eigenvector of M.
double power_iterate(const Mat& M, Vec& x, const PerronOptions& opts, long& iterations) {
  x = Vec::Ones(M.rows());
  Vec y(M.rows());
  for (long it = 1; it <= opts.max_iter; ++it) {
    y.noalias() = M * x;
    // Entries that underflowed to zero carry no information about the bracket.
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!(x(i) > 0.0)) continue;
      lo = std::min(lo, y(i) / x(i));
      hi = std::max(hi, y(i) / x(i));
    }
    x = y / y.maxCoeff();
    if (hi - lo <= opts.tol * hi) {
      iterations += it;
      return 0.5 * (hi + lo);
    }
  }
  throw Error(ErrorCode::NonConvergence, "power iteration did not converge");
}

PerronData perron_unchecked(const Mat& M, const PerronOptions& opts = {}) {
  PerronData pd;
  pd.eigenvalue = power_iterate(M, pd.right, opts, pd.iterations);
  power_iterate(M.transpose(), pd.left, opts, pd.iterations);
  pd.left /= pd.left.dot(pd.right);
  return pd;
}

struct Edges {
  std::vector<int> from, to;  // 0-based
};

Edges edge_endpoints(const DirectedGraph& g) {
  Edges e;
  for (const Edge& x : g.edges()) {
    e.from.push_back(x.from - 1);
    e.to.push_back(x.to - 1);
  }
  return e;
}

// Tighter than the public default: pressure derivatives are taken by finite
// differences of these eigenvectors.
constexpr PerronOptions kFamilyPerron{1e-13, 1'000'000};

// The one-parameter family s -> exp(<u, class> - s * roof), evaluated with
// its largest exponent factored out so that no entry overflows.
class PotentialFamily {
 public:
  PotentialFamily(const DirectedGraph& g, const WeightSystem& w, const Vec& u)
      : g_(g), w_(w), ends_(edge_endpoints(g)) {
    require_weights(g, w);
    if (u.size() != w.dim()) throw Error(ErrorCode::DimensionMismatch, "u has wrong dimension");
    if (!is_aperiodic(g)) throw Error(ErrorCode::NotPrimitive, "coding graph is periodic");
    a_.resize(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      double dot = 0.0;
      for (int j = 0; j < w.dim(); ++j) dot += u(j) * static_cast<double>(w.cls[e][static_cast<std::size_t>(j)]);
      a_[e] = dot;
    }
  }

  struct Eval {
    double log_lambda = 0.0;
    double slope = 0.0;  // d/ds log lambda
    Mat scaled;          // M(u, s) / exp(shift)
    PerronData pd;       // of `scaled`
    std::vector<double> edge_measure;
  };

  Mat scaled_matrix(double s, double& shift) const {
    shift = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < a_.size(); ++e) shift = std::max(shift, a_[e] - s * w_.roof[e]);
    const auto k = g_.vertex_count();
    Mat M = Mat::Zero(k, k);
    for (std::size_t e = 0; e < a_.size(); ++e)
      M(ends_.from[e], ends_.to[e]) = std::exp(a_[e] - s * w_.roof[e] - shift);
    return M;
  }

  Eval eval(double s) const {
    Eval ev;
    double shift = 0.0;
    ev.scaled = scaled_matrix(s, shift);
    ev.pd = perron_unchecked(ev.scaled, kFamilyPerron);
    ev.log_lambda = shift + std::log(ev.pd.eigenvalue);
    ev.edge_measure.resize(a_.size());
    double slope = 0.0;
    for (std::size_t e = 0; e < a_.size(); ++e) {
      const int i = ends_.from[e], j = ends_.to[e];
      const double m = ev.pd.left(i) * ev.scaled(i, j) * ev.pd.right(j) / ev.pd.eigenvalue;
      ev.edge_measure[e] = m;
      slope -= m * w_.roof[e];
    }
    ev.slope = slope;
    return ev;
  }

  double root() const {
    // f(s) = log lambda(s) is convex and strictly decreasing. Every entry is
    // >= 1 at s_lo (so lambda >= 1) and every entry is <= 1/k at s_hi.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const double log_k = std::log(static_cast<double>(g_.vertex_count()));
    for (std::size_t e = 0; e < a_.size(); ++e) {
      lo = std::min(lo, a_[e] / w_.roof[e]);
      hi = std::max(hi, (a_[e] + log_k) / w_.roof[e]);
    }
    for (double width = 1.0; eval(lo).log_lambda < 0.0; width *= 2.0) lo -= width;
    for (double width = 1.0; eval(hi).log_lambda > 0.0; width *= 2.0) hi += width;

    double s = lo;
    for (int it = 0; it < 500; ++it) {
      const Eval ev = eval(s);
      const double f = ev.log_lambda;
      if (f == 0.0) return s;
      if (f > 0.0)
        lo = s;
      else
        hi = s;
      double next = s - f / ev.slope;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double scale = std::max(1.0, std::abs(next));
      if (std::abs(next - s) <= 1e-12 * scale || hi - lo <= 1e-12 * scale) return next;
      s = next;
    }
    throw Error(ErrorCode::NonConvergence, "flow pressure root did not converge");
  }

  [[nodiscard]] const WeightSystem& weights() const noexcept { return w_; }

 private:
  const DirectedGraph& g_;
  const WeightSystem& w_;
  Edges ends_;
  std::vector<double> a_;
};

MarkovMeasure measure_from(const DirectedGraph& g, const Mat& M, const PerronData& pd) {
  const auto k = static_cast<int>(M.rows());
  MarkovMeasure mm;
  mm.transition = Mat::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    double row = 0.0;
    for (int j = 0; j < k; ++j) {
      mm.transition(i, j) = M(i, j) * pd.right(j) / (pd.eigenvalue * pd.right(i));
      row += mm.transition(i, j);
    }
    mm.transition.row(i) /= row;
  }
  mm.stationary = pd.left.cwiseProduct(pd.right);
  mm.stationary /= mm.stationary.sum();
  mm.edge_measure.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    mm.edge_measure.push_back(mm.stationary(e.from - 1) * mm.transition(e.from - 1, e.to - 1));
  return mm;
}

}  // namespace

Mat transfer_matrix(const DirectedGraph& g, const WeightSystem& w, const Vec& u, double s) {
  require_weights(g, w);
  if (u.size() != w.dim()) throw Error(ErrorCode::DimensionMismatch, "u has wrong dimension");
  const auto k = g.vertex_count();
  Mat M = Mat::Zero(k, k);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    double dot = 0.0;
    for (int j = 0; j < w.dim(); ++j) dot += u(j) * static_cast<double>(w.cls[e][static_cast<std::size_t>(j)]);
    const Edge& x = g.edge(e);
    M(x.from - 1, x.to - 1) = std::exp(dot - s * w.roof[e]);
  }
  return M;
}

PerronData perron(const Mat& M, const PerronOptions& opts) {
  require_primitive(M);
  return perron_unchecked(M, opts);
}

double shift_pressure(const DirectedGraph& g, const WeightSystem& w, const Vec& u, double s) {
  return PotentialFamily(g, w, u).eval(s).log_lambda;
}

double flow_pressure(const DirectedGraph& g, const WeightSystem& w, const Vec& u) {
  return PotentialFamily(g, w, u).root();
}

Vec pressure_gradient(const DirectedGraph& g, const WeightSystem& w, const Vec& u) {
  const PotentialFamily fam(g, w, u);
  const auto ev = fam.eval(fam.root());
  Vec num = Vec::Zero(w.dim());
  double den = 0.0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    for (int j = 0; j < w.dim(); ++j)
      num(j) += ev.edge_measure[e] * static_cast<double>(w.cls[e][static_cast<std::size_t>(j)]);
    den += ev.edge_measure[e] * w.roof[e];
  }
  return num / den;
}

Mat pressure_hessian(const DirectedGraph& g, const WeightSystem& w, const Vec& u) {
  const auto d = w.dim();
  Mat H(d, d);
  for (int j = 0; j < d; ++j) {
    const double h = std::max(1e-5, 1e-5 * std::abs(u(j)));
    Vec up = u, dn = u;
    up(j) += h;
    dn(j) -= h;
    H.col(j) = (pressure_gradient(g, w, up) - pressure_gradient(g, w, dn)) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

MarkovMeasure equilibrium_measure(const DirectedGraph& g, const WeightSystem& w, const Vec& u) {
  const PotentialFamily fam(g, w, u);
  const auto ev = fam.eval(fam.root());
  return measure_from(g, ev.scaled, ev.pd);
}

MarkovMeasure markov_measure_of(const DirectedGraph& g, const Mat& M) {
  return measure_from(g, M, perron(M));
}

double integrate_observable(const MarkovMeasure& mm, const WeightSystem& w, std::span<const double> phi) {
  if (phi.size() != mm.edge_measure.size())
    throw Error(ErrorCode::MissingEdgeValue, "observable must be defined on every edge");
  if (w.roof.size() != mm.edge_measure.size())
    throw Error(ErrorCode::MissingEdgeWeight, "roof must be defined on every edge");
  double num = 0.0, den = 0.0;
  for (std::size_t e = 0; e < phi.size(); ++e) {
    num += mm.edge_measure[e] * phi[e];
    den += mm.edge_measure[e] * w.roof[e];
  }
  return num / den;
}

double markov_entropy(const MarkovMeasure& mm) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < mm.transition.rows(); ++i)
    for (Eigen::Index j = 0; j < mm.transition.cols(); ++j) {
      const double p = mm.transition(i, j);
      if (p > 0.0) h -= mm.stationary(i) * p * std::log(p);
    }
  return h;
}

}  // namespace symflow
