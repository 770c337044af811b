#include "phasefield/scaling.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/explicit_solver.hpp"
#include "phasefield/scenarios.hpp"
#include "phasefield/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace phasefield {

std::optional<double> fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("fit_power_law: x and y differ in length");
  const std::size_t count = x.size();
  if (count < 2) return std::nullopt;
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw InvalidArgument("fit_power_law needs positive data");
    mean_x += std::log(x[k]);
    mean_y += std::log(y[k]);
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double dx = std::log(x[k]) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(y[k]) - mean_y);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ScalingResult scaling_benchmark(Model model, SolverKind solver, std::span<const int> sizes,
                                const ScalingOptions& options) {
  if (options.steps_per_size < 1 || options.repeats < 1) {
    throw InvalidArgument("scaling benchmark needs at least one step and one repeat");
  }
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw InvalidArgument("scaling sizes must be ascending");

  ScalingResult result;
  using Clock = std::chrono::steady_clock;
  const PhysicalConstants constants{options.gamma, 1.0};

  for (int size : sizes) {
    const Grid grid = Grid::square(size, 1.0 / size, BoundaryCondition::Periodic);
    const Stepper stepper(model, solver, grid, constants, SplittingPolicy{});
    const Field T = create_field(grid, -2.0);
    const Field h = create_field(grid, 0.0);
    const Field start(grid, uniform_noise(size, size, 0.1, 7));
    const double dt = options.dt_factor * explicit_stability_limit(model, constants.gamma, grid.dr());

    std::vector<double> samples;
    for (int r = 0; r < options.repeats; ++r) {
      Field phi = start;
      const auto t0 = Clock::now();
      for (int s = 0; s < options.steps_per_size; ++s) {
        phi = stepper.advance(phi, T, h, dt);
      }
      const auto t1 = Clock::now();
      samples.push_back(std::chrono::duration<double>(t1 - t0).count() / options.steps_per_size);
    }
    std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
    result.table.push_back(ScalingPoint{size, grid.dof(), samples[samples.size() / 2]});
  }

  if (result.table.size() < 3) {
    result.fit_error = "need at least three sizes to fit a scaling exponent";
    return result;
  }
  std::vector<double> dof;
  std::vector<double> seconds;
  for (const auto& p : result.table) {
    dof.push_back(static_cast<double>(p.dof));
    seconds.push_back(p.seconds_per_step);
  }
  result.exponent = fit_power_law(dof, seconds);
  if (!result.exponent) result.fit_error = "degenerate size list";
  return result;
}

}  // namespace phasefield
