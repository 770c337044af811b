#include "phasefield/explicit_solver.hpp"
#include "phasefield/simulation.hpp"

#include <benchmark/benchmark.h>

using namespace phasefield;

namespace {

struct Setup {
  Grid grid;
  Field phi;
  Field T;
  Field h;

  explicit Setup(int n)
      : grid(Grid::square(n, 1.0 / n, BoundaryCondition::Periodic)),
        phi(grid, uniform_noise(n, n, 0.1, 42)),
        T(create_field(grid, -2.0)),
        h(create_field(grid, 0.0)) {}
};

void step(benchmark::State& state, Model model, SolverKind solver) {
  const Setup s(static_cast<int>(state.range(0)));
  const PhysicalConstants constants{0.01, 1.0};
  const Stepper stepper(model, solver, s.grid, constants, SplittingPolicy{});
  const double dt = 0.5 * explicit_stability_limit(model, constants.gamma, s.grid.dr());
  for (auto _ : state) {
    benchmark::DoNotOptimize(stepper.advance(s.phi, s.T, s.h, dt));
  }
  state.SetComplexityN(s.grid.dof());
}

void laplacian_kernel(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(s.phi.values(), s.grid));
  state.SetComplexityN(s.grid.dof());
}

void spectral_roundtrip(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  const GridBases bases = build_bases(s.grid);
  for (auto _ : state) {
    const Matrix y = spectral_transform(s.phi.values(), bases, TransformDirection::Forward);
    benchmark::DoNotOptimize(spectral_transform(y, bases, TransformDirection::Inverse));
  }
  state.SetComplexityN(s.grid.dof());
}

}  // namespace

BENCHMARK_CAPTURE(step, ac_explicit, Model::AllenCahn, SolverKind::Explicit)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK_CAPTURE(step, ac_implicit, Model::AllenCahn, SolverKind::Implicit)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK_CAPTURE(step, ch_explicit, Model::CahnHilliard, SolverKind::Explicit)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK_CAPTURE(step, ch_implicit, Model::CahnHilliard, SolverKind::Implicit)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK(laplacian_kernel)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK(spectral_roundtrip)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK_MAIN();
