#pragma once

// Exact periodic-orbit counts by length window and homology class, the
// asymptotic predictor for those counts, and the derived Margulis,
// Chebotarev and equidistribution statistics.
//
// Target classes use the fundamental domain [0,1)^d: floor_class(rho, T) is
// the componentwise floor of T * rho.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symflow/legendre.hpp"
#include "symflow/quotient.hpp"

namespace symflow {

inline constexpr int kDefaultPeriodCap = 32;

struct CountOptions {
  /// Refuse exact counts when floor(T / r_min) exceeds this.
  int period_cap = kDefaultPeriodCap;
  /// Worker threads for enumeration; 0 = hardware concurrency.
  unsigned threads = 0;
};

struct CountQuery {
  double T = 0.0;
  double delta = 0.0;
  Vec rho;
  IntVector alpha;
  std::vector<PrimeCycle> removed;
};

struct CountResult {
  double T = 0.0;
  double delta = 0.0;
  IntVector target_class;
  std::optional<std::int64_t> exact;
  double predicted = 0.0;
  std::optional<double> ratio;
};

IntVector floor_class(const Vec& rho, double T);

/// Cycles counted by exact_window_count: length in (T - delta, T] and class
/// equal to floor_class(rho, T) + alpha, removed cycles excluded.
std::int64_t exact_window_count(const DirectedGraph& g, const WeightSystem& w, const CountQuery& q,
                                const CountOptions& opts = {});

/// Batched form; all queries share one enumeration and must carry the same
/// removed list.
std::vector<std::int64_t> exact_window_counts(const DirectedGraph& g, const WeightSystem& w,
                                              std::span<const CountQuery> qs, const CountOptions& opts = {});

/// Closed-walk generating matrices with monomial entries, Moebius-inverted
/// to prime-cycle counts. Requires roof == 1 on every edge.
class TracePrimeTable {
 public:
  TracePrimeTable(const DirectedGraph& g, const WeightSystem& w, int n_max);

  [[nodiscard]] int n_max() const noexcept { return n_max_; }
  /// Number of closed walks of length n with class sum beta.
  [[nodiscard]] std::int64_t closed_walks(int n, const IntVector& beta) const;
  /// Number of prime cycles of period n with class beta.
  [[nodiscard]] std::int64_t prime_count(int n, const IntVector& beta) const;
  /// Classes beta with at least one closed walk of length n.
  [[nodiscard]] std::vector<IntVector> attainable(int n) const;

 private:
  int n_max_;
  std::vector<std::map<IntVector, std::int64_t>> walks_;  // walks_[n]
};

std::int64_t trace_prime_count(const DirectedGraph& g, const WeightSystem& w, int n, const IntVector& beta);

/// sqrt|det hess h| / (2 pi)^{d/2} * A0 * e^{-<u, alpha>} * e^{h T + <u, T rho - floor(T rho)>} / T^{1 + d/2},
/// A0 = (1 - e^{-p delta}) / p (or delta when |p| <= 1e-12), p = pressure at u.
double predict_count(const DirectedGraph& g, const WeightSystem& w, const DirectionData& dd, const CountQuery& q);

std::vector<CountResult> sweep(const DirectedGraph& g, const WeightSystem& w, const Vec& rho, const IntVector& alpha,
                               double delta, std::span<const double> T_list,
                               const std::vector<PrimeCycle>& removed = {}, const CountOptions& opts = {});

/// T + j * delta / 5 for j = 0..4: the T-jitter used when averaging ratios.
std::vector<double> jitter_points(double T, double delta);

struct MargulisResult {
  double T = 0.0;
  std::int64_t exact = 0;
  double reference = 0.0;  // e^{hT} / (hT), h = flow_pressure(0)
  double entropy = 0.0;
};

MargulisResult margulis_total(const DirectedGraph& g, const WeightSystem& w, const std::vector<PrimeCycle>& removed,
                              double T, const CountOptions& opts = {});
std::vector<MargulisResult> margulis_totals(const DirectedGraph& g, const WeightSystem& w,
                                            const std::vector<PrimeCycle>& removed, std::span<const double> T_list,
                                            const CountOptions& opts = {});

struct ChebotarevRow {
  std::string label;
  std::int64_t count = 0;
  double frequency = 0.0;
  double reference = 0.0;  // |C| / |G|
};

struct ChebotarevResult {
  std::vector<ChebotarevRow> rows;
  std::int64_t total = 0;
  /// Set when the probed cycle classes do not generate Z^d.
  std::optional<std::string> warning;
};

/// Class frequencies over prime cycles of period <= n_max.
ChebotarevResult chebotarev_distribution(const DirectedGraph& g, const WeightSystem& w,
                                         const std::vector<PrimeCycle>& removed, const FiniteQuotient& quot,
                                         int n_max, const CountOptions& opts = {});

struct EquidistributionResult {
  double empirical = 0.0;
  double expected = 0.0;
};

/// For each observable phi (per-edge fibre integrals): the mean of
/// (sum of phi along the cycle) / length over the cycles selected by q,
/// against the integral of phi for the equilibrium state at dd.u.
std::vector<EquidistributionResult> equidistribution_test(const DirectedGraph& g, const WeightSystem& w,
                                                          const DirectionData& dd, const CountQuery& q,
                                                          const std::vector<std::vector<double>>& phis,
                                                          const CountOptions& opts = {});

EquidistributionResult equidistribution_test(const DirectedGraph& g, const WeightSystem& w, const DirectionData& dd,
                                             const CountQuery& q, std::span<const double> phi,
                                             const CountOptions& opts = {});

}  // namespace symflow
