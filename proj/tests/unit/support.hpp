#pragma once

#include "phasefield/grid.hpp"
#include "phasefield/scenarios.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace testing {

using namespace phasefield;

inline Field random_field(const Grid& grid, std::uint64_t seed, double amplitude = 1.0) {
  return Field(grid, uniform_noise(grid.n(), grid.m(), amplitude, seed));
}

/// Five-point Laplacian written directly from neighbour values with
/// boundary ghosts, independent of the matrix machinery.
inline double ghost(const Matrix& v, int i, int j, const Grid& g) {
  auto wrap = [](int k, int size, BoundaryCondition bc) {
    if (k >= 0 && k < size) return k;
    switch (bc) {
      case BoundaryCondition::Periodic:
        return (k + size) % size;
      case BoundaryCondition::Neumann:
        return k < 0 ? 0 : size - 1;
      case BoundaryCondition::Symmetric:
        return k < 0 ? 1 : size - 2;
    }
    return k;
  };
  return v(wrap(i, g.n(), g.bc_y()), wrap(j, g.m(), g.bc_x()));
}

inline Matrix stencil_laplacian(const Matrix& v, const Grid& g) {
  Matrix out(g.n(), g.m());
  const double inv = 1.0 / (g.dr() * g.dr());
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.m(); ++j) {
      out(i, j) = inv * (ghost(v, i - 1, j, g) + ghost(v, i + 1, j, g) + ghost(v, i, j - 1, g) +
                         ghost(v, i, j + 1, g) - 4.0 * v(i, j));
    }
  }
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("phasefield_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
