#include "symflow/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "symflow/error.hpp"

namespace symflow {

namespace {

// A length window (lo, hi] with an optional required class.
struct Selection {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::optional<IntVector> target;

  [[nodiscard]] bool accepts(double length, const IntVector& cls) const {
    return length > lo && length <= hi && (!target || *target == cls);
  }
};

class RemovedSet {
 public:
  RemovedSet(const DirectedGraph& g, const std::vector<PrimeCycle>& removed) {
    for (const auto& c : removed) cycles_.push_back(canonical_form(g, c.vertices).vertices);
  }
  [[nodiscard]] bool contains(std::span<const int> vertices) const {
    return std::any_of(cycles_.begin(), cycles_.end(), [&](const std::vector<int>& c) {
      return c.size() == vertices.size() && std::equal(c.begin(), c.end(), vertices.begin());
    });
  }
  [[nodiscard]] std::size_t size() const noexcept { return cycles_.size(); }

 private:
  std::vector<std::vector<int>> cycles_;
};

void cycle_class(std::span<const int> edges, const WeightSystem& w, IntVector& out) {
  std::fill(out.begin(), out.end(), 0);
  for (const int e : edges) {
    const auto& c = w.cls[static_cast<std::size_t>(e)];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c[j];
  }
}

// Limits for enumerating every cycle of length <= t_max, enforcing the period budget.
CycleLimits length_limits(const WeightSystem& w, double t_max, const CountOptions& opts) {
  const double r_min = w.r_min();
  const double bound = std::floor(t_max / r_min);
  if (bound > static_cast<double>(opts.period_cap)) {
    throw Error(ErrorCode::BudgetExceeded, "floor(T / r_min) = " + std::to_string(static_cast<long long>(bound)) +
                                               " exceeds the period cap " + std::to_string(opts.period_cap));
  }
  CycleLimits lim;
  lim.max_period = std::max(1, static_cast<int>(bound));
  lim.edge_cost = w.roof;
  lim.max_cost = t_max;
  return lim;
}

struct CountAcc {
  std::vector<std::int64_t> counts;
  IntVector cls;
};

std::vector<std::int64_t> count_selections(const DirectedGraph& g, const WeightSystem& w,
                                           const std::vector<Selection>& sel, const RemovedSet& removed,
                                           const CountOptions& opts) {
  if (sel.empty()) return {};
  double t_max = 0.0;
  for (const auto& s : sel) t_max = std::max(t_max, s.hi);
  if (t_max <= 0.0) return std::vector<std::int64_t>(sel.size(), 0);
  const CycleLimits lim = length_limits(w, t_max, opts);

  CountAcc init{std::vector<std::int64_t>(sel.size(), 0), IntVector(static_cast<std::size_t>(w.dim()), 0)};
  auto visit = [&](CountAcc& acc, const CycleView& c) {
    if (removed.size() != 0 && removed.contains(c.vertices)) return;
    cycle_class(c.edges, w, acc.cls);
    for (std::size_t i = 0; i < sel.size(); ++i)
      if (sel[i].accepts(c.cost, acc.cls)) ++acc.counts[i];
  };
  auto merge = [](CountAcc& into, CountAcc&& from) {
    for (std::size_t i = 0; i < into.counts.size(); ++i) into.counts[i] += from.counts[i];
  };
  return reduce_prime_cycles(g, lim, init, visit, merge, opts.threads).counts;
}

IntVector target_of(const CountQuery& q, int d) {
  if (q.rho.size() != d) throw Error(ErrorCode::DimensionMismatch, "rho has wrong dimension");
  if (!q.alpha.empty() && static_cast<int>(q.alpha.size()) != d)
    throw Error(ErrorCode::DimensionMismatch, "alpha has wrong dimension");
  IntVector t = floor_class(q.rho, q.T);
  for (std::size_t j = 0; j < q.alpha.size(); ++j) t[j] += q.alpha[j];
  return t;
}

void check_window(double T, double delta) {
  if (!(T > 0.0) || !(delta > 0.0) || delta > T)
    throw Error(ErrorCode::InvalidArgument, "window requires T > 0 and 0 < delta <= T");
}

int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

}  // namespace

IntVector floor_class(const Vec& rho, double T) {
  IntVector out(static_cast<std::size_t>(rho.size()));
  for (Eigen::Index j = 0; j < rho.size(); ++j) out[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(std::floor(T * rho(j)));
  return out;
}

std::vector<std::int64_t> exact_window_counts(const DirectedGraph& g, const WeightSystem& w,
                                              std::span<const CountQuery> qs, const CountOptions& opts) {
  require_weights(g, w);
  if (qs.empty()) return {};
  std::vector<Selection> sel;
  for (const auto& q : qs) {
    check_window(q.T, q.delta);
    if (q.removed != qs.front().removed)
      throw Error(ErrorCode::InvalidArgument, "batched queries must share the removed list");
    sel.push_back(Selection{q.T - q.delta, q.T, target_of(q, w.dim())});
  }
  return count_selections(g, w, sel, RemovedSet(g, qs.front().removed), opts);
}

std::int64_t exact_window_count(const DirectedGraph& g, const WeightSystem& w, const CountQuery& q,
                                const CountOptions& opts) {
  return exact_window_counts(g, w, std::span<const CountQuery>(&q, 1), opts).front();
}

TracePrimeTable::TracePrimeTable(const DirectedGraph& g, const WeightSystem& w, int n_max) : n_max_(n_max) {
  require_weights(g, w);
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  if (std::any_of(w.roof.begin(), w.roof.end(), [](double r) { return r != 1.0; }))
    throw Error(ErrorCode::RoofNotUnit, "trace counting requires roof == 1 on every edge");

  using Poly = std::map<IntVector, std::int64_t>;
  const auto k = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<Poly>> power(k, std::vector<Poly>(k));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& x = g.edge(e);
    power[static_cast<std::size_t>(x.from - 1)][static_cast<std::size_t>(x.to - 1)][w.cls[e]] = 1;
  }
  walks_.resize(static_cast<std::size_t>(n_max) + 1);
  for (int m = 1; m <= n_max; ++m) {
    auto& closed = walks_[static_cast<std::size_t>(m)];
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& [beta, c] : power[i][i]) closed[beta] = checked::add(closed[beta], c);
    if (m == n_max) break;
    // power <- power * A, where A has a single monomial per edge.
    std::vector<std::vector<Poly>> next(k, std::vector<Poly>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& x = g.edge(e);
        const auto l = static_cast<std::size_t>(x.from - 1);
        auto& dst = next[i][static_cast<std::size_t>(x.to - 1)];
        for (const auto& [beta, c] : power[i][l]) {
          IntVector shifted = beta;
          for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] += w.cls[e][j];
          dst[shifted] = checked::add(dst[shifted], c);
        }
      }
    power = std::move(next);
  }
}

std::int64_t TracePrimeTable::closed_walks(int n, const IntVector& beta) const {
  if (n < 1 || n > n_max_) throw Error(ErrorCode::InvalidArgument, "n outside the computed range");
  const auto& m = walks_[static_cast<std::size_t>(n)];
  const auto it = m.find(beta);
  return it == m.end() ? 0 : it->second;
}

std::int64_t TracePrimeTable::prime_count(int n, const IntVector& beta) const {
  // n * P(n, beta) = sum over q | gcd(n, beta) of mu(q) * W(n / q, beta / q).
  std::int64_t total = 0;
  for (int q = 1; q <= n; ++q) {
    if (n % q != 0) continue;
    if (std::any_of(beta.begin(), beta.end(), [q](std::int64_t b) { return b % q != 0; })) continue;
    const int mu = moebius(q);
    if (mu == 0) continue;
    IntVector reduced = beta;
    for (auto& b : reduced) b /= q;
    total += mu * closed_walks(n / q, reduced);
  }
  if (total % n != 0) throw Error(ErrorCode::NonConvergence, "Moebius inversion produced a non-integer count");
  return total / n;
}

std::vector<IntVector> TracePrimeTable::attainable(int n) const {
  if (n < 1 || n > n_max_) throw Error(ErrorCode::InvalidArgument, "n outside the computed range");
  std::vector<IntVector> out;
  for (const auto& [beta, c] : walks_[static_cast<std::size_t>(n)])
    if (c > 0) out.push_back(beta);
  return out;
}

std::int64_t trace_prime_count(const DirectedGraph& g, const WeightSystem& w, int n, const IntVector& beta) {
  return TracePrimeTable(g, w, n).prime_count(n, beta);
}

double predict_count(const DirectedGraph& g, const WeightSystem& w, const DirectionData& dd, const CountQuery& q) {
  require_weights(g, w);
  check_window(q.T, q.delta);
  const int d = w.dim();
  if (dd.u.size() != d || dd.hessian_h.rows() != d) throw Error(ErrorCode::DimensionMismatch, "direction data has wrong dimension");
  if ((dd.rho - q.rho).lpNorm<Eigen::Infinity>() > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "direction data was solved for a different rho");
  if (!q.alpha.empty() && static_cast<int>(q.alpha.size()) != d)
    throw Error(ErrorCode::DimensionMismatch, "alpha has wrong dimension");

  const double det = std::abs(dd.hessian_h.determinant());
  if (!(det > 0.0) || !std::isfinite(det)) throw Error(ErrorCode::SingularHessian, "entropy Hessian is singular");

  const double p = dd.pressure_at_u;
  const double a0 = p != 0.0 ? -std::expm1(-p * q.delta) / p : q.delta;
  double u_alpha = 0.0;
  for (std::size_t j = 0; j < q.alpha.size(); ++j) u_alpha += dd.u(static_cast<Eigen::Index>(j)) * static_cast<double>(q.alpha[j]);

  const IntVector fl = floor_class(q.rho, q.T);
  double frac = 0.0;
  for (int j = 0; j < d; ++j) frac += dd.u(j) * (q.T * q.rho(j) - static_cast<double>(fl[static_cast<std::size_t>(j)]));

  const double half_d = 0.5 * static_cast<double>(d);
  return std::sqrt(det) / std::pow(2.0 * std::numbers::pi, half_d) * a0 * std::exp(-u_alpha) *
         std::exp(dd.entropy * q.T + frac) / std::pow(q.T, 1.0 + half_d);
}

std::vector<CountResult> sweep(const DirectedGraph& g, const WeightSystem& w, const Vec& rho, const IntVector& alpha,
                               double delta, std::span<const double> T_list, const std::vector<PrimeCycle>& removed,
                               const CountOptions& opts) {
  if (T_list.empty()) return {};
  const DirectionData dd = solve_u(g, w, rho);
  std::vector<CountResult> rows;
  std::vector<CountQuery> batch;
  std::vector<std::size_t> batch_rows;
  const double r_min = w.r_min();
  for (const double T : T_list) {
    CountQuery q{T, delta, rho, alpha, removed};
    CountResult r;
    r.T = T;
    r.delta = delta;
    r.target_class = target_of(q, w.dim());
    r.predicted = predict_count(g, w, dd, q);
    if (std::floor(T / r_min) <= static_cast<double>(opts.period_cap)) {
      batch.push_back(std::move(q));
      batch_rows.push_back(rows.size());
    }
    rows.push_back(std::move(r));
  }
  const auto counts = exact_window_counts(g, w, batch, opts);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    auto& r = rows[batch_rows[i]];
    r.exact = counts[i];
    if (r.predicted > 0.0) r.ratio = static_cast<double>(counts[i]) / r.predicted;
  }
  return rows;
}

std::vector<double> jitter_points(double T, double delta) {
  std::vector<double> out;
  for (int j = 0; j < 5; ++j) out.push_back(T + j * delta / 5.0);
  return out;
}

std::vector<MargulisResult> margulis_totals(const DirectedGraph& g, const WeightSystem& w,
                                            const std::vector<PrimeCycle>& removed, std::span<const double> T_list,
                                            const CountOptions& opts) {
  require_weights(g, w);
  const double h = flow_pressure(g, w, Vec::Zero(w.dim()));
  std::vector<Selection> sel;
  for (const double T : T_list) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
    sel.push_back(Selection{-std::numeric_limits<double>::infinity(), T, std::nullopt});
  }
  const auto counts = count_selections(g, w, sel, RemovedSet(g, removed), opts);
  std::vector<MargulisResult> out;
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    const double T = T_list[i];
    out.push_back(MargulisResult{T, counts[i], std::exp(h * T) / (h * T), h});
  }
  return out;
}

MargulisResult margulis_total(const DirectedGraph& g, const WeightSystem& w, const std::vector<PrimeCycle>& removed,
                              double T, const CountOptions& opts) {
  return margulis_totals(g, w, removed, std::span<const double>(&T, 1), opts).front();
}

ChebotarevResult chebotarev_distribution(const DirectedGraph& g, const WeightSystem& w,
                                         const std::vector<PrimeCycle>& removed, const FiniteQuotient& quot,
                                         int n_max, const CountOptions& opts) {
  require_weights(g, w);
  quot.check_against(g, w);
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  const RemovedSet removed_set(g, removed);

  CycleLimits lim;
  lim.max_period = n_max;
  CountAcc init{std::vector<std::int64_t>(quot.class_count(), 0), IntVector(static_cast<std::size_t>(w.dim()), 0)};
  auto visit = [&](CountAcc& acc, const CycleView& c) {
    if (removed_set.size() != 0 && removed_set.contains(c.vertices)) return;
    cycle_class(c.edges, w, acc.cls);
    ++acc.counts[quot.class_of(c.edges, acc.cls)];
  };
  auto merge = [](CountAcc& into, CountAcc&& from) {
    for (std::size_t i = 0; i < into.counts.size(); ++i) into.counts[i] += from.counts[i];
  };
  const auto counts = reduce_prime_cycles(g, lim, init, visit, merge, opts.threads).counts;

  ChebotarevResult out;
  for (const auto c : counts) out.total += c;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    ChebotarevRow row;
    row.label = quot.class_label(i);
    row.count = counts[i];
    row.frequency = out.total > 0 ? static_cast<double>(counts[i]) / static_cast<double>(out.total) : 0.0;
    row.reference = static_cast<double>(quot.class_size(i)) / static_cast<double>(quot.order());
    out.rows.push_back(std::move(row));
  }
  const auto gen = generation_check(g, w, std::min(n_max, 10));
  if (!gen.generates)
    out.warning = "cycle classes do not generate Z^" + std::to_string(w.dim()) +
                  "; the limiting distribution need not be uniform";
  return out;
}

std::vector<EquidistributionResult> equidistribution_test(const DirectedGraph& g, const WeightSystem& w,
                                                          const DirectionData& dd, const CountQuery& q,
                                                          const std::vector<std::vector<double>>& phis,
                                                          const CountOptions& opts) {
  require_weights(g, w);
  check_window(q.T, q.delta);
  for (const auto& phi : phis)
    if (phi.size() != g.edge_count()) throw Error(ErrorCode::MissingEdgeValue, "observable must be defined on every edge");

  const Selection sel{q.T - q.delta, q.T, target_of(q, w.dim())};
  const RemovedSet removed(g, q.removed);
  const CycleLimits lim = length_limits(w, q.T, opts);

  struct Acc {
    std::int64_t count = 0;
    std::vector<long double> sums;
    IntVector cls;
  };
  Acc init{0, std::vector<long double>(phis.size(), 0.0L), IntVector(static_cast<std::size_t>(w.dim()), 0)};
  auto visit = [&](Acc& acc, const CycleView& c) {
    if (removed.size() != 0 && removed.contains(c.vertices)) return;
    cycle_class(c.edges, w, acc.cls);
    if (!sel.accepts(c.cost, acc.cls)) return;
    ++acc.count;
    for (std::size_t i = 0; i < phis.size(); ++i) {
      double s = 0.0;
      for (const int e : c.edges) s += phis[i][static_cast<std::size_t>(e)];
      acc.sums[i] += s / c.cost;
    }
  };
  auto merge = [](Acc& into, Acc&& from) {
    into.count += from.count;
    for (std::size_t i = 0; i < into.sums.size(); ++i) into.sums[i] += from.sums[i];
  };
  const Acc acc = reduce_prime_cycles(g, lim, init, visit, merge, opts.threads);
  if (acc.count == 0) throw Error(ErrorCode::EmptySelection, "no cycle satisfies the window and class constraint");

  const MarkovMeasure mm = equilibrium_measure(g, w, dd.u);
  std::vector<EquidistributionResult> out;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    out.push_back(EquidistributionResult{static_cast<double>(acc.sums[i] / static_cast<long double>(acc.count)),
                                         integrate_observable(mm, w, phis[i])});
  }
  return out;
}

EquidistributionResult equidistribution_test(const DirectedGraph& g, const WeightSystem& w, const DirectionData& dd,
                                             const CountQuery& q, std::span<const double> phi,
                                             const CountOptions& opts) {
  const std::vector<std::vector<double>> phis{{phi.begin(), phi.end()}};
  return equidistribution_test(g, w, dd, q, phis, opts).front();
}

}  // namespace symflow
