#include "tpcamg/model_peridynamic.hpp"
#include "tpcamg/toeplitz.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void BM_ToeplitzMatvec(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto t = tpcamg::ToeplitzSpec::from_full(m, random_vector(2 * m - 1, 1));
  const tpcamg::ToeplitzKernel k(t);
  const auto x = random_vector(m, 2);
  std::vector<double> y(m);
  for (auto _ : state) {
    k.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToeplitzMatvec)->RangeMultiplier(2)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_PeridynamicMatvec(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto sys = tpcamg::assemble_pd_system({N, tpcamg::Horizon::fixed(0.25), true});
  const auto x = random_vector(sys.op.size(), 3);
  std::vector<double> y(x.size());
  for (auto _ : state) {
    sys.op.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PeridynamicMatvec)->RangeMultiplier(2)->Range(1 << 10, 1 << 15)->Complexity(benchmark::oNLogN);

} // namespace
