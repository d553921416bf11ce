#include <benchmark/benchmark.h>

#include "jckerr/analysis.hpp"
#include "jckerr/eigen.hpp"
#include "jckerr/observables.hpp"

namespace {

jckerr::ModelParams point(double delta, double eps) {
  jckerr::ModelParams p;
  p.delta = delta;
  p.epsilon = eps;
  return p;
}

void BM_Jacobi4(benchmark::State& state) {
  const auto block = jckerr::build_block(point(1.5, 1.0), jckerr::Sector{0});
  for (auto _ : state) benchmark::DoNotOptimize(jckerr::eigh_symmetric(block.entries));
}
BENCHMARK(BM_Jacobi4);

void BM_SymmetricReduction(benchmark::State& state) {
  const auto block = jckerr::build_block(point(1.5, 1.0), jckerr::Sector{0});
  for (auto _ : state) benchmark::DoNotOptimize(jckerr::reduced_spectrum(block));
}
BENCHMARK(BM_SymmetricReduction);

void BM_Holonomy(benchmark::State& state) {
  const auto g = jckerr::ground_state_at(0, 1.5, 1.0);
  const jckerr::HolonomyLoop loop{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(jckerr::berry_phase_holonomy(g, loop));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Holonomy)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_Argmax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jckerr::argmax_ground_energy(n, 1.0));
}
BENCHMARK(BM_Argmax)->Arg(0)->Arg(40);

void BM_Sweep(benchmark::State& state) {
  jckerr::SweepSpec spec;
  spec.delta_steps = spec.eps_steps = 201;
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jckerr::sweep(spec, threads));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
