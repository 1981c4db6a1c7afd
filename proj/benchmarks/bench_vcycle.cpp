#include "tpcamg/hierarchy.hpp"
#include "tpcamg/model_gamma.hpp"
#include "tpcamg/model_peridynamic.hpp"
#include "tpcamg/solver.hpp"
#include "tpcamg/timestepper.hpp"

#include <benchmark/benchmark.h>

namespace {

tpcamg::TpcOperator pd_step(std::size_t N) {
  const auto sys = tpcamg::assemble_pd_system({N, tpcamg::Horizon::fixed(0.25), true});
  return tpcamg::build_step_operator(sys.op, sys.scale, 1.0 / static_cast<double>(N));
}

void BM_VCycle(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto hier = tpcamg::build_hierarchy(pd_step(N));
  tpcamg::CycleWorkspace ws(hier);
  std::vector<double> b(hier.level(0).size(), 1.0), x(b.size());
  for (auto _ : state) {
    tpcamg::vcycle(hier, b, x, {}, ws);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VCycle)->RangeMultiplier(2)->Range(1 << 10, 1 << 15)->Complexity(benchmark::oNLogN);

void BM_BuildHierarchy(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto op = pd_step(N);
  for (auto _ : state) benchmark::DoNotOptimize(tpcamg::build_hierarchy(op).depth());
}
BENCHMARK(BM_BuildHierarchy)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_GammaSolve(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto sys = tpcamg::assemble_gamma_system({N, 0.5});
  const auto hier =
      tpcamg::build_hierarchy(tpcamg::build_step_operator(sys.op, sys.scale, 1.0 / static_cast<double>(N)));
  std::vector<double> b(sys.op.size(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(tpcamg::solve(hier, b, {}).second.iterations);
}
BENCHMARK(BM_GammaSolve)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);

} // namespace
