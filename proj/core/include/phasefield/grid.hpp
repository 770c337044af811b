#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <utility>

namespace phasefield {

/// Dense row-major storage used for every 2-D field. Row index i runs along
/// y, column index j along x.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class BoundaryCondition { Periodic, Neumann, Symmetric };

std::string_view to_string(BoundaryCondition bc) noexcept;

/// Accepts "periodic", "neumann" or "symmetric" (case-insensitive).
BoundaryCondition parse_boundary_condition(std::string_view text);

/// Uniform structured grid with cell-centred nodes.
///
/// The row axis (size n, spacing dr) is coupled by the left Laplacian matrix
/// and carries `bc_y`; the column axis (size m) by the right matrix and
/// carries `bc_x`. Node (i, j) sits at x = (j + 1/2) dr, y = (i + 1/2) dr.
class Grid {
 public:
  Grid(int n, int m, double dr, BoundaryCondition bc_y, BoundaryCondition bc_x);

  /// Square N x N grid with the same boundary condition on both axes.
  static Grid square(int size, double dr, BoundaryCondition bc) { return {size, size, dr, bc, bc}; }

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  double dr() const noexcept { return dr_; }
  BoundaryCondition bc_y() const noexcept { return bc_y_; }
  BoundaryCondition bc_x() const noexcept { return bc_x_; }
  long dof() const noexcept { return static_cast<long>(n_) * m_; }
  double cell_area() const noexcept { return dr_ * dr_; }

  double x_center(int j) const noexcept { return (j + 0.5) * dr_; }
  double y_center(int i) const noexcept { return (i + 0.5) * dr_; }
  double width() const noexcept { return m_ * dr_; }
  double height() const noexcept { return n_ * dr_; }

  bool same_shape(const Grid& other) const noexcept { return n_ == other.n_ && m_ == other.m_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  int m_;
  double dr_;
  BoundaryCondition bc_y_;
  BoundaryCondition bc_x_;
};

/// Scalar field sampled on a Grid.
class Field {
 public:
  Field(Grid grid, Matrix values);

  const Grid& grid() const noexcept { return grid_; }
  const Matrix& values() const noexcept { return values_; }
  Matrix& values() noexcept { return values_; }

  double operator()(int i, int j) const { return values_(i, j); }
  double& operator()(int i, int j) { return values_(i, j); }

  int rows() const noexcept { return grid_.n(); }
  int cols() const noexcept { return grid_.m(); }

  /// Same grid, new values. Shape must match.
  Field with_values(Matrix values) const { return Field(grid_, std::move(values)); }

 private:
  Grid grid_;
  Matrix values_;
};

Field create_field(const Grid& grid, double fill);

/// Root-mean-square difference sqrt(sum (a - b)^2 / (n m)).
double l2_difference(const Field& a, const Field& b);

/// Integral of the field over the domain, sum f_ij dr^2.
double total_mass(const Field& f);

double max_abs(const Field& f);

bool all_finite(const Field& f);

/// Throws DimensionError unless both fields have the same shape.
void require_same_shape(const Field& a, const Field& b, std::string_view what);

}  // namespace phasefield
