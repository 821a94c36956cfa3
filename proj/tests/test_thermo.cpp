#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "support.hpp"
#include "symflow/error.hpp"
#include "symflow/model.hpp"
#include "symflow/thermo.hpp"

using namespace symflow;
using namespace symflow::testing;

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

Vec v1(double x) { return Vec::Constant(1, x); }

}  // namespace

TEST(TransferMatrix, Examples) {
  const auto g = full_graph(2);
  const auto w = into2_weights(g);
  EXPECT_TRUE(transfer_matrix(g, w, v1(0), 0).isApprox(Mat::Ones(2, 2)));
  Mat expected(2, 2);
  expected << 1, std::exp(1.0), 1, std::exp(1.0);
  EXPECT_TRUE(transfer_matrix(g, w, v1(1), 0).isApprox(expected));
  const Mat half = transfer_matrix(golden_graph(), into2_weights(golden_graph()), v1(0), std::log(2.0));
  EXPECT_NEAR(half(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(half(1, 0), 0.5, 1e-15);
  EXPECT_EQ(half(1, 1), 0.0);
  EXPECT_THROW(transfer_matrix(g, w, Vec::Zero(2), 0), Error);
}

TEST(Perron, Examples) {
  EXPECT_NEAR(perron(Mat::Ones(2, 2)).eigenvalue, 2.0, 1e-12);
  Mat golden(2, 2);
  golden << 1, 1, 1, 0;
  EXPECT_NEAR(perron(golden).eigenvalue, kPhi, 1e-12);
  Mat swap(2, 2);
  swap << 0, 1, 1, 0;
  try {
    perron(swap);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrimitive);
  }
}

TEST(Perron, MatchesDenseEigensolverAndResiduals) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> val(0.05, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_graph(rng, 2 + trial % 6, 0.4);
    if (!is_aperiodic(g)) continue;
    Mat M = Mat::Zero(g.vertex_count(), g.vertex_count());
    for (const auto& e : g.edges()) M(e.from - 1, e.to - 1) = val(rng);
    const PerronData pd = perron(M);
    const Eigen::EigenSolver<Mat> es(M);
    const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    EXPECT_NEAR(pd.eigenvalue, rho, 1e-10 * rho);
    EXPECT_LE((M * pd.right - pd.eigenvalue * pd.right).lpNorm<Eigen::Infinity>(),
              1e-10 * pd.eigenvalue * pd.right.lpNorm<Eigen::Infinity>());
    EXPECT_LE((pd.left.transpose() * M - pd.eigenvalue * pd.left.transpose()).lpNorm<Eigen::Infinity>(),
              1e-10 * pd.eigenvalue * pd.left.lpNorm<Eigen::Infinity>());
    EXPECT_NEAR(pd.right.maxCoeff(), 1.0, 1e-15);
    EXPECT_NEAR(pd.left.dot(pd.right), 1.0, 1e-12);
    EXPECT_GT(pd.right.minCoeff(), 0.0);
    EXPECT_GT(pd.left.minCoeff(), 0.0);
  }
}

TEST(Pressure, ShiftPressureExamples) {
  const auto g = full_graph(2);
  const auto w = into2_weights(g);
  EXPECT_NEAR(shift_pressure(g, w, v1(0), 0), std::log(2.0), 1e-12);
  EXPECT_NEAR(shift_pressure(golden_graph(), into2_weights(golden_graph()), v1(0), 0), std::log(kPhi), 1e-12);
  for (const double t : {-2.0, 0.5, 3.0}) EXPECT_NEAR(shift_pressure(g, w, v1(t), 0), std::log1p(std::exp(t)), 1e-12);
}

TEST(Pressure, FlowPressureClosedForms) {
  const auto g = full_graph(2);
  const auto w = into2_weights(g);
  for (const double t : {-5.0, -1.0, 0.0, 0.7, 4.0}) EXPECT_NEAR(flow_pressure(g, w, v1(t)), std::log1p(std::exp(t)), 1e-10);
  EXPECT_NEAR(flow_pressure(golden_graph(), into2_weights(golden_graph()), v1(0)), std::log(kPhi), 1e-10);
  // Constant roof c rescales the pressure by 1/c.
  auto slow = w;
  for (auto& r : slow.roof) r = 2.5;
  EXPECT_NEAR(flow_pressure(g, slow, v1(0.3)), std::log1p(std::exp(0.3)) / 2.5, 1e-10);
}

TEST(Pressure, RootSolvesShiftEquation) {
  const auto m = builtin_model("bench3");
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    const Vec x{{u(rng), u(rng)}};
    EXPECT_NEAR(shift_pressure(m.graph, m.weights, x, flow_pressure(m.graph, m.weights, x)), 0.0, 1e-10);
  }
}

TEST(Pressure, GradientExamples) {
  const auto g = full_graph(2);
  const auto w = into2_weights(g);
  EXPECT_NEAR(pressure_gradient(g, w, v1(0))(0), 0.5, 1e-12);
  EXPECT_NEAR(pressure_gradient(g, w, v1(std::log(1.0 / 3.0)))(0), 0.25, 1e-12);
  EXPECT_NEAR(pressure_gradient(g, zero_weights(g, 1), v1(1.3))(0), 0.0, 1e-15);
}

TEST(Pressure, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> dist(-2, 2);
  for (const char* name : {"full2", "goldenmean", "bench3"}) {
    const auto m = builtin_model(name);
    const int d = m.weights.dim();
    for (int i = 0; i < 20; ++i) {
      Vec u(d);
      for (int j = 0; j < d; ++j) u(j) = dist(rng);
      const Vec grad = pressure_gradient(m.graph, m.weights, u);
      for (int j = 0; j < d; ++j) {
        const double h = 1e-5;
        Vec a = u, b = u;
        a(j) += h;
        b(j) -= h;
        const double fd = (flow_pressure(m.graph, m.weights, a) - flow_pressure(m.graph, m.weights, b)) / (2 * h);
        EXPECT_NEAR(grad(j), fd, 1e-6 * std::max(1.0, std::abs(fd))) << name;
      }
    }
  }
}

TEST(Pressure, HessianExamplesAndConvexity) {
  const auto g = full_graph(2);
  EXPECT_NEAR(pressure_hessian(g, into2_weights(g), v1(0))(0, 0), 0.25, 1e-6);
  EXPECT_NEAR(pressure_hessian(g, zero_weights(g, 1), v1(0.4)).norm(), 0.0, 1e-9);

  const auto m = builtin_model("bench3");
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> dist(-2, 2);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int i = 0; i < 20; ++i) {
    const Vec a{{dist(rng), dist(rng)}}, b{{dist(rng), dist(rng)}};
    const double t = unit(rng);
    EXPECT_LE(flow_pressure(m.graph, m.weights, t * a + (1 - t) * b),
              t * flow_pressure(m.graph, m.weights, a) + (1 - t) * flow_pressure(m.graph, m.weights, b) + 1e-10);
    const Mat H = pressure_hessian(m.graph, m.weights, a);
    EXPECT_EQ((H - H.transpose()).norm(), 0.0);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Mat>(H).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Equilibrium, Examples) {
  const auto g = full_graph(2);
  const auto mm = equilibrium_measure(g, into2_weights(g), v1(0));
  EXPECT_NEAR(mm.stationary(0), 0.5, 1e-12);
  EXPECT_TRUE(mm.transition.isApprox(Mat::Constant(2, 2, 0.5), 1e-12));

  const auto gm = equilibrium_measure(golden_graph(), into2_weights(golden_graph()), v1(0));
  EXPECT_NEAR(gm.transition(0, 0), 1 / kPhi, 1e-10);
  EXPECT_NEAR(gm.transition(0, 1), 1 / (kPhi * kPhi), 1e-10);
  EXPECT_NEAR(gm.transition(1, 0), 1.0, 1e-12);
  EXPECT_NEAR(gm.stationary(0), kPhi * kPhi / (kPhi * kPhi + 1), 1e-10);

  // Concentrates on vertex 2 as u grows.
  const auto hot = equilibrium_measure(g, into2_weights(g), v1(8.0));
  EXPECT_GT(hot.stationary(1), 0.99);
}

TEST(Equilibrium, MarkovInvariants) {
  const auto m = builtin_model("bench3");
  const Vec u{{0.4, -0.7}};
  const auto mm = equilibrium_measure(m.graph, m.weights, u);
  EXPECT_NEAR(mm.stationary.sum(), 1.0, 1e-12);
  EXPECT_LE((mm.stationary.transpose() * mm.transition - mm.stationary.transpose()).lpNorm<Eigen::Infinity>(), 1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(mm.transition.row(i).sum(), 1.0, 1e-12);
  double total = 0.0;
  for (const double x : mm.edge_measure) {
    EXPECT_GT(x, 0.0);
    total += x;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Equilibrium, ObservablesAndVariationalPrinciple) {
  const auto m = builtin_model("bench3");
  const Vec u{{-0.3, 0.5}};
  const auto mm = equilibrium_measure(m.graph, m.weights, u);
  EXPECT_NEAR(integrate_observable(mm, m.weights, m.weights.roof), 1.0, 1e-12);
  std::vector<double> scaled;
  for (const double r : m.weights.roof) scaled.push_back(3.5 * r);
  EXPECT_NEAR(integrate_observable(mm, m.weights, scaled), 3.5, 1e-12);
  const Vec grad = pressure_gradient(m.graph, m.weights, u);
  for (int j = 0; j < 2; ++j) {
    std::vector<double> coord;
    for (const auto& c : m.weights.cls) coord.push_back(static_cast<double>(c[static_cast<std::size_t>(j)]));
    EXPECT_NEAR(integrate_observable(mm, m.weights, coord), grad(j), 1e-12);
  }
  EXPECT_THROW(integrate_observable(mm, m.weights, std::vector<double>{1.0}), Error);

  // h(m) + int(<u,f> - p r) dm = 0 for the eigen-measure at s = p(u).
  const double p = flow_pressure(m.graph, m.weights, u);
  double potential = 0.0;
  for (std::size_t e = 0; e < m.graph.edge_count(); ++e)
    potential += mm.edge_measure[e] * (u(0) * m.weights.cls[e][0] + u(1) * m.weights.cls[e][1] - p * m.weights.roof[e]);
  EXPECT_NEAR(markov_entropy(mm) + potential, 0.0, 1e-10);
}

TEST(Equilibrium, UnitRoofEntropyIsTopologicalEntropy) {
  const auto g = golden_graph();
  const auto mm = equilibrium_measure(g, into2_weights(g), v1(0));
  EXPECT_NEAR(markov_entropy(mm), std::log(kPhi), 1e-10);
}
