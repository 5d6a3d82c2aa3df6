#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "ferrohyst/beam.hpp"
#include "ferrohyst/constitutive.hpp"
#include "ferrohyst/hysteresis.hpp"
#include "ferrohyst/inversion.hpp"
#include "ferrohyst/preisach.hpp"

using namespace ferrohyst;

static void BM_EvolveMemory(benchmark::State& state) {
  const auto grid = RGrid::uniform(4.0, static_cast<std::size_t>(state.range(0)));
  auto memory = MemoryState::virgin(grid);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    memory.evolve(2.0 * std::sin(t));
    benchmark::DoNotOptimize(memory.xi().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvolveMemory)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

static void BM_Outputs(benchmark::State& state) {
  const auto density = PreisachDensity::projection();
  auto memory = MemoryState::virgin(RGrid::uniform(4.0, static_cast<std::size_t>(state.range(0))));
  memory.evolve(0.7);
  memory.evolve(-0.2);
  for (auto _ : state) benchmark::DoNotOptimize(hysteresis_outputs(density, memory));
}
BENCHMARK(BM_Outputs)->RangeMultiplier(4)->Range(64, 4096);

static void BM_InvertStep(benchmark::State& state) {
  const Inverter inv(PreisachDensity::projection());
  auto memory = MemoryState::virgin(RGrid::uniform(4.0, static_cast<std::size_t>(state.range(0))));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    auto sol = inv.step(memory, 2.0, 1.5 * std::sin(t));
    memory = std::move(sol.memory);
  }
}
BENCHMARK(BM_InvertStep)->Arg(100)->Arg(400)->Arg(1600);

static void BM_BeamStep(benchmark::State& state) {
  MaterialParams p;
  p.nu = 0.01;
  const MaterialModel model(p, PreisachDensity::projection(), 1.0, 32);
  const BeamSolver solver({1.0, static_cast<std::size_t>(state.range(0))}, model, {1e-3, 1e-10, 50, false});
  BoundaryData bd;
  bd.r = [](double t) { return 0.3 * std::sin(2 * std::numbers::pi * t); };
  auto s = solver.initial_state([](double) { return 0.0; }, [](double) { return 0.0; }, bd);
  for (auto _ : state) s = solver.step(s, bd);
}
BENCHMARK(BM_BeamStep)->Arg(16)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
