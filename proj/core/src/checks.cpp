#include "symflow/checks.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "symflow/counting.hpp"
#include "symflow/error.hpp"
#include "symflow/model.hpp"

namespace symflow {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

template <class F>
double millis(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

double binary_entropy(double r) { return -r * std::log(r) - (1.0 - r) * std::log(1.0 - r); }

std::vector<double> rho_grid() {
  std::vector<double> out;
  for (int i = 1; i <= 19; ++i) out.push_back(0.05 * i);
  return out;
}

}  // namespace

CheckResult check_perron_exact() {
  CheckResult r{1, "perron exactness", false, ""};
  Mat golden(2, 2);
  golden << 1, 1, 1, 0;
  const Mat ones = Mat::Ones(3, 3);
  PerronData pg, po;
  // Warm-up so the timing reflects the solver, not first-touch effects.
  perron(golden);
  const double tg = millis([&] { pg = perron(golden); });
  const double to = millis([&] { po = perron(ones); });
  const double eg = std::abs(pg.eigenvalue - (1.0 + std::sqrt(5.0)) / 2.0);
  const double eo = std::abs(po.eigenvalue - 3.0);
  r.passed = eg <= 1e-10 && eo <= 1e-12 && tg < 1.0 && to < 1.0;
  r.detail = "golden err " + fmt(eg) + ", ones err " + fmt(eo) + ", times " + fmt(tg) + "/" + fmt(to) + " ms";
  return r;
}

CheckResult check_pressure_closed_forms() {
  CheckResult r{2, "pressure closed forms", false, ""};
  const auto full2 = builtin_model("full2");
  const auto golden = builtin_model("goldenmean");
  double worst = 0.0;
  for (const double u : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    const double p = flow_pressure(full2.graph, full2.weights, Vec::Constant(1, u));
    worst = std::max(worst, std::abs(p - std::log1p(std::exp(u))));
  }
  const double pg = flow_pressure(golden.graph, golden.weights, Vec::Zero(1));
  const double eg = std::abs(pg - std::log((1.0 + std::sqrt(5.0)) / 2.0));
  r.passed = worst <= 1e-9 && eg <= 1e-9;
  r.detail = "full2 err " + fmt(worst) + ", goldenmean err " + fmt(eg);
  return r;
}

CheckResult check_gradient_hessian() {
  CheckResult r{3, "gradient and hessian consistency", false, ""};
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  double worst_rel = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  double asym = 0.0;
  for (const char* name : {"full2", "bench3"}) {
    const auto m = builtin_model(name);
    const int d = m.weights.dim();
    for (int trial = 0; trial < 20; ++trial) {
      Vec u(d);
      for (int j = 0; j < d; ++j) u(j) = dist(rng);
      const Vec g = pressure_gradient(m.graph, m.weights, u);
      Vec fd(d);
      for (int j = 0; j < d; ++j) {
        const double h = 1e-5 * std::max(1.0, std::abs(u(j)));
        Vec up = u, dn = u;
        up(j) += h;
        dn(j) -= h;
        fd(j) = (flow_pressure(m.graph, m.weights, up) - flow_pressure(m.graph, m.weights, dn)) / (2.0 * h);
      }
      worst_rel = std::max(worst_rel, (g - fd).norm() / std::max(g.norm(), 1e-12));
      const Mat H = pressure_hessian(m.graph, m.weights, u);
      asym = std::max(asym, (H - H.transpose()).cwiseAbs().maxCoeff());
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat>(H).eigenvalues().minCoeff());
    }
  }
  r.passed = worst_rel <= 1e-6 && asym == 0.0 && min_eig >= -1e-8;
  r.detail = "max rel err " + fmt(worst_rel) + ", min eigenvalue " + fmt(min_eig);
  return r;
}

CheckResult check_legendre_roundtrip() {
  CheckResult r{4, "legendre roundtrip and entropy", false, ""};
  const auto m = builtin_model("full2");
  double worst_grad = 0.0;
  double worst_h = 0.0;
  for (const double rho : rho_grid()) {
    const DirectionData dd = solve_u(m.graph, m.weights, Vec::Constant(1, rho));
    worst_grad = std::max(worst_grad, std::abs(pressure_gradient(m.graph, m.weights, dd.u)(0) - rho));
    worst_h = std::max(worst_h, std::abs(dd.entropy - binary_entropy(rho)));
  }
  const DirectionData half = solve_u(m.graph, m.weights, Vec::Constant(1, 0.5));
  const double hh = entropy_hessian(m.graph, m.weights, half)(0, 0);
  r.passed = worst_grad <= 1e-8 && worst_h <= 1e-8 && std::abs(hh + 4.0) <= 1e-5;
  r.detail = "grad err " + fmt(worst_grad) + ", entropy err " + fmt(worst_h) + ", hess(1/2) " + std::to_string(hh);
  return r;
}

CheckResult check_entropy_extremum() {
  CheckResult r{5, "entropy extremum", false, ""};
  const auto m = builtin_model("full2");
  double best = -std::numeric_limits<double>::infinity();
  double arg = 0.0;
  for (const double rho : rho_grid()) {
    const double h = solve_u(m.graph, m.weights, Vec::Constant(1, rho)).entropy;
    if (h > best) {
      best = h;
      arg = rho;
    }
  }
  const double p0 = flow_pressure(m.graph, m.weights, Vec::Zero(1));
  const double g0 = pressure_gradient(m.graph, m.weights, Vec::Zero(1))(0);
  r.passed = std::abs(best - p0) <= 1e-6 && std::abs(arg - g0) <= 1e-6;
  r.detail = "max h " + std::to_string(best) + " at " + std::to_string(arg) + ", p(0) " + std::to_string(p0);
  return r;
}

CheckResult check_trace_oracle() {
  CheckResult r{6, "window counts against trace oracle", false, ""};
  constexpr int kMaxPeriod = 12;
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  const double ms = millis([&] {
    for (const char* name : {"full2", "goldenmean"}) {
      const auto m = builtin_model(name);
      const TracePrimeTable table(m.graph, m.weights, kMaxPeriod);
      std::vector<CountQuery> qs;
      std::vector<std::int64_t> expected;
      for (int n = 1; n <= kMaxPeriod; ++n) {
        for (const auto& beta : table.attainable(n)) {
          Vec rho(m.weights.dim());
          for (int j = 0; j < rho.size(); ++j) rho(j) = (static_cast<double>(beta[static_cast<std::size_t>(j)]) + 0.5) / n;
          qs.push_back(CountQuery{static_cast<double>(n), 1.0, rho, {}, {}});
          expected.push_back(table.prime_count(n, beta));
        }
      }
      const auto got = exact_window_counts(m.graph, m.weights, qs);
      for (std::size_t i = 0; i < got.size(); ++i) mismatches += got[i] != expected[i];
      compared += got.size();
    }
  });
  r.passed = mismatches == 0 && compared > 0 && ms < 10'000.0;
  r.detail = std::to_string(compared) + " classes compared, " + std::to_string(mismatches) + " mismatches, " +
             fmt(ms) + " ms";
  return r;
}

std::vector<CheckResult> run_checks() {
  std::vector<CheckResult> out;
  for (auto* f : {&check_perron_exact, &check_pressure_closed_forms, &check_gradient_hessian, &check_legendre_roundtrip,
                  &check_entropy_extremum, &check_trace_oracle}) {
    try {
      out.push_back(f());
    } catch (const Error& e) {
      out.push_back(CheckResult{static_cast<int>(out.size()) + 1, "error", false, e.what()});
    }
  }
  return out;
}

}  // namespace symflow
