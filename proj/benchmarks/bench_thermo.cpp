#include <benchmark/benchmark.h>

#include "symflow/legendre.hpp"
#include "symflow/model.hpp"

namespace {

using namespace symflow;

void BM_PerronGolden(benchmark::State& state) {
  Mat M(2, 2);
  M << 1, 1, 1, 0;
  for (auto _ : state) benchmark::DoNotOptimize(perron(M).eigenvalue);
}
BENCHMARK(BM_PerronGolden);

void BM_FlowPressureBench3(benchmark::State& state) {
  const auto m = builtin_model("bench3");
  const Vec u = Vec::Constant(2, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(flow_pressure(m.graph, m.weights, u));
}
BENCHMARK(BM_FlowPressureBench3);

void BM_PressureHessianBench3(benchmark::State& state) {
  const auto m = builtin_model("bench3");
  const Vec u = Vec::Constant(2, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(pressure_hessian(m.graph, m.weights, u)(0, 0));
}
BENCHMARK(BM_PressureHessianBench3);

void BM_SolveUBench3(benchmark::State& state) {
  const auto m = builtin_model("bench3");
  const Vec rho = pressure_gradient(m.graph, m.weights, Vec::Constant(2, 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(solve_u(m.graph, m.weights, rho).entropy);
}
BENCHMARK(BM_SolveUBench3);

}  // namespace
BENCHMARK_MAIN();
