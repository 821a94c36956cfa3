#include <benchmark/benchmark.h>

#include "symflow/counting.hpp"
#include "symflow/model.hpp"

namespace {

using namespace symflow;

void BM_PrimeCyclesFull2(benchmark::State& state) {
  const auto m = builtin_model("full2");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_prime_cycles(m.graph, n).size());
}
BENCHMARK(BM_PrimeCyclesFull2)->Arg(12)->Arg(16)->Arg(20);

void BM_MargulisBench3(benchmark::State& state) {
  const auto m = builtin_model("bench3");
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(margulis_total(m.graph, m.weights, m.removed, T, {48, 0}).exact);
}
BENCHMARK(BM_MargulisBench3)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_TraceTable(benchmark::State& state) {
  const auto m = builtin_model("full2");
  for (auto _ : state) benchmark::DoNotOptimize(TracePrimeTable(m.graph, m.weights, static_cast<int>(state.range(0))).n_max());
}
BENCHMARK(BM_TraceTable)->Arg(12)->Arg(24);

}  // namespace
