#include <benchmark/benchmark.h>

#include "detlab/disk/assembly.hpp"
#include "detlab/disk/modes.hpp"
#include "detlab/disk/radial_potential.hpp"
#include "detlab/halfline/spectral_point.hpp"

using namespace detlab;

static void BM_ModeData(benchmark::State& state) {
  const RadialPotential2D V = radial_gaussian(-1.0, 0.25);
  const DiskModeSolver solver(V, sqrt_principal(-2.0), Discretization{});
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solver.mode_data(ell));
}
BENCHMARK(BM_ModeData)->Arg(0)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_ModeSum(benchmark::State& state) {
  const RadialPotential2D V = radial_gaussian(-1.0, 0.25);
  const DiskModeSolver solver(V, sqrt_principal(-2.0), Discretization{});
  AssemblyOptions opts;
  opts.l_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_theorem_4_2(solver, opts));
}
BENCHMARK(BM_ModeSum)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
