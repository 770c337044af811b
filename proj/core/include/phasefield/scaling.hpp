#pragma once

#include "phasefield/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phasefield {

struct ScalingPoint {
  int size;            // N for an N x N grid
  long dof;            // N^2
  double seconds_per_step;
};

struct ScalingResult {
  std::vector<ScalingPoint> table;
  std::optional<double> exponent;  // slope of log(time) against log(DoF)
  std::string fit_error;           // set when the exponent is undefined
};

struct ScalingOptions {
  int steps_per_size = 10;
  int repeats = 3;            // median of repeats is reported
  double dt_factor = 0.5;     // dt = dt_factor * explicit stability limit
  double gamma = 0.01;
};

/// Times the stepping loop (bases prebuilt) on unit-square periodic N x N
/// grids seeded with small noise, T = -2, h = 0.
ScalingResult scaling_benchmark(Model model, SolverKind solver, std::span<const int> sizes,
                                const ScalingOptions& options = {});

/// Least-squares slope of log(y) against log(x). nullopt for fewer than two
/// distinct points.
std::optional<double> fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace phasefield
