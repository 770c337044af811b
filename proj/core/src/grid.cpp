#include "phasefield/grid.hpp"

#include "phasefield/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace phasefield {

std::string_view to_string(BoundaryCondition bc) noexcept {
  switch (bc) {
    case BoundaryCondition::Periodic:
      return "periodic";
    case BoundaryCondition::Neumann:
      return "neumann";
    case BoundaryCondition::Symmetric:
      return "symmetric";
  }
  return "unknown";
}

BoundaryCondition parse_boundary_condition(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "periodic") return BoundaryCondition::Periodic;
  if (lower == "neumann") return BoundaryCondition::Neumann;
  if (lower == "symmetric") return BoundaryCondition::Symmetric;
  throw InvalidArgument("unknown boundary condition '" + std::string(text) + "'");
}

Grid::Grid(int n, int m, double dr, BoundaryCondition bc_y, BoundaryCondition bc_x)
    : n_(n), m_(m), dr_(dr), bc_y_(bc_y), bc_x_(bc_x) {
  if (n < 3 || m < 3) {
    throw InvalidArgument("grid needs at least 3 nodes per axis, got " + std::to_string(n) + "x" +
                          std::to_string(m));
  }
  if (!(dr > 0.0) || !std::isfinite(dr)) {
    throw InvalidArgument("grid spacing must be positive and finite");
  }
}

Field::Field(Grid grid, Matrix values) : grid_(grid), values_(std::move(values)) {
  if (values_.rows() != grid_.n() || values_.cols() != grid_.m()) {
    throw DimensionError("field values are " + std::to_string(values_.rows()) + "x" +
                         std::to_string(values_.cols()) + " but grid is " + std::to_string(grid_.n()) +
                         "x" + std::to_string(grid_.m()));
  }
}

Field create_field(const Grid& grid, double fill) {
  return Field(grid, Matrix::Constant(grid.n(), grid.m(), fill));
}

void require_same_shape(const Field& a, const Field& b, std::string_view what) {
  if (!a.grid().same_shape(b.grid())) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

double l2_difference(const Field& a, const Field& b) {
  require_same_shape(a, b, "l2_difference");
  const double sum_sq = (a.values() - b.values()).squaredNorm();
  return std::sqrt(sum_sq / static_cast<double>(a.grid().dof()));
}

double total_mass(const Field& f) { return f.values().sum() * f.grid().cell_area(); }

double max_abs(const Field& f) { return f.values().cwiseAbs().maxCoeff(); }

bool all_finite(const Field& f) { return f.values().allFinite(); }

}  // namespace phasefield
