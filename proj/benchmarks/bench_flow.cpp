#include <benchmark/benchmark.h>

#include "kricci/flow.hpp"
#include "kricci/geometry.hpp"

namespace {

kricci::FlowConfig perturbed(int N, kricci::Discretization d) {
  kricci::FlowConfig c = kricci::FlowConfig::on_grid(kricci::PeriodicGrid(1, N));
  c.background_potential =
      kricci::fourier_field(c.grid, {{0.02, {1, 0, 0, 0}, 0.0}});
  c.twist.c = 0.5;
  c.discretization = d;
  return c;
}

void BM_CurvatureField(benchmark::State& state) {
  const kricci::PeriodicGrid grid(2, static_cast<int>(state.range(0)));
  const kricci::ScalarField psi = kricci::fourier_field(
      grid, {{0.01, {1, 0, 1, 0}, 0.0}, {0.005, {0, 1, 0, 2}, 0.3}});
  const kricci::MetricField g =
      kricci::metric_from_potential(kricci::HermitianField::identity(grid), psi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kricci::curvature_field(g, kricci::Discretization::fd2).raw_symmetry_violation);
  }
}
BENCHMARK(BM_CurvatureField)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_FlowStep(benchmark::State& state) {
  const auto d = state.range(1) == 0 ? kricci::Discretization::fd2
                                     : kricci::Discretization::spectral;
  const kricci::FlowModel model(perturbed(static_cast<int>(state.range(0)), d));
  kricci::FlowState s = kricci::make_state(model, model.config().phi0, 0.0);
  for (auto _ : state) {
    s = kricci::rk2_step(model, s, 1e-5);
    benchmark::DoNotOptimize(s.phi[0]);
  }
}
BENCHMARK(BM_FlowStep)->Args({32, 0})->Args({64, 0})->Args({32, 1})->Args({64, 1})
    ->Unit(benchmark::kMicrosecond);

}  // namespace
