#include <benchmark/benchmark.h>

#include "detlab/halfline/birman_schwinger.hpp"
#include "detlab/halfline/boundary.hpp"
#include "detlab/halfline/potential.hpp"
#include "detlab/halfline/solutions.hpp"
#include "detlab/halfline/spectral_point.hpp"

using namespace detlab;

static void BM_FredholmDetFixedGrid(benchmark::State& state) {
  const Potential1D V = exponential_potential(-2.0, 1.0);
  const SpectralPoint p = sqrt_principal({-1.0, 0.5});
  const int level = static_cast<int>(state.range(0));
  const QuadratureGrid g = halfline_grid(V, Discretization{}, level);
  for (auto _ : state) benchmark::DoNotOptimize(fredholm_det_halfline_at(V, p, Boundary::dirichlet, g));
  state.counters["nodes"] = static_cast<double>(g.size());
}
BENCHMARK(BM_FredholmDetFixedGrid)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_BoundaryScalar(benchmark::State& state) {
  const Potential1D V = square_well(1.0, 1.0);
  const SpectralPoint p = sqrt_principal(-2.0);
  for (auto _ : state) benchmark::DoNotOptimize(boundary_scalar_1d(V, p));
}
BENCHMARK(BM_BoundaryScalar)->Unit(benchmark::kMillisecond);

static void BM_JostBoundaryValues(benchmark::State& state) {
  const Potential1D V = exponential_potential(-2.0, 1.0);
  const SpectralPoint p = sqrt_principal(-2.0);
  for (auto _ : state) benchmark::DoNotOptimize(jost_boundary_values(V, p));
}
BENCHMARK(BM_JostBoundaryValues)->Unit(benchmark::kMicrosecond);
