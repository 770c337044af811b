#include "phasefield/spectral.hpp"

#include "phasefield/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace phasefield {

namespace {

// Coefficients of the first and last rows of the unscaled matrix:
// (self, inward neighbour, wrap-around neighbour).
struct BoundaryRow {
  double self;
  double inward;
  double wrap;
};

BoundaryRow boundary_row(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Periodic:
      return {-2.0, 1.0, 1.0};
    case BoundaryCondition::Neumann:
      return {-1.0, 1.0, 0.0};
    case BoundaryCondition::Symmetric:
      return {-2.0, 2.0, 0.0};
  }
  return {0.0, 0.0, 0.0};
}

// Second difference along x inside one row, out[j] = sum_k A[j][k] in[k].
void second_difference_x(const double* in, double* out, int m, BoundaryRow edge) {
  for (int j = 1; j < m - 1; ++j) {
    out[j] = in[j - 1] - 2.0 * in[j] + in[j + 1];
  }
  out[0] = edge.self * in[0] + edge.inward * in[1];
  out[m - 1] = edge.inward * in[m - 2] + edge.self * in[m - 1];
  if (edge.wrap != 0.0) {
    out[0] += edge.wrap * in[m - 1];
    out[m - 1] += edge.wrap * in[0];
  }
}

}  // namespace

LaplacianMatrix build_laplacian_matrix(int size, double dr, BoundaryCondition bc) {
  if (size < 3) {
    throw InvalidArgument("Laplacian matrix needs size >= 3, got " + std::to_string(size));
  }
  if (!(dr > 0.0)) {
    throw InvalidArgument("Laplacian matrix needs dr > 0");
  }
  Matrix a = Matrix::Zero(size, size);
  for (int k = 1; k < size - 1; ++k) {
    a(k, k - 1) = 1.0;
    a(k, k) = -2.0;
    a(k, k + 1) = 1.0;
  }
  const BoundaryRow edge = boundary_row(bc);
  a(0, 0) = edge.self;
  a(0, 1) = edge.inward;
  a(size - 1, size - 1) = edge.self;
  a(size - 1, size - 2) = edge.inward;
  if (edge.wrap != 0.0) {
    a(0, size - 1) = edge.wrap;
    a(size - 1, 0) = edge.wrap;
  }
  a /= dr * dr;
  return LaplacianMatrix(size, dr, bc, std::move(a));
}

SpectralBasis eigendecompose(const LaplacianMatrix& a) {
  const int size = a.size();
  const double scale = 1.0 / (a.dr() * a.dr());
  const double pi = std::numbers::pi;
  SpectralBasis basis{Matrix(size, size), Vector(size)};

  switch (a.bc()) {
    case BoundaryCondition::Neumann: {
      // DCT-II modes cos(pi k (i + 1/2) / N).
      for (int k = 0; k < size; ++k) {
        const double s = std::sin(pi * k / (2.0 * size));
        basis.d(k) = -4.0 * s * s * scale;
        const double norm = std::sqrt((k == 0 ? 1.0 : 2.0) / size);
        for (int i = 0; i < size; ++i) {
          basis.q(i, k) = norm * std::cos(pi * k * (i + 0.5) / size);
        }
      }
      break;
    }
    case BoundaryCondition::Periodic: {
      // Constant mode, then cos/sin pairs, then the alternating mode for even N.
      int col = 0;
      const double norm_pair = std::sqrt(2.0 / size);
      const double norm_single = std::sqrt(1.0 / size);
      basis.d(col) = 0.0;
      basis.q.col(col).setConstant(norm_single);
      ++col;
      for (int k = 1; 2 * k < size; ++k) {
        const double s = std::sin(pi * k / size);
        const double eig = -4.0 * s * s * scale;
        for (int i = 0; i < size; ++i) {
          // Reduce the angle first so large i*k keeps full precision.
          const long phase = (static_cast<long>(i) * k) % size;
          const double angle = 2.0 * pi * static_cast<double>(phase) / size;
          basis.q(i, col) = norm_pair * std::cos(angle);
          basis.q(i, col + 1) = norm_pair * std::sin(angle);
        }
        basis.d(col) = eig;
        basis.d(col + 1) = eig;
        col += 2;
      }
      if (size % 2 == 0) {
        basis.d(col) = -4.0 * scale;
        for (int i = 0; i < size; ++i) {
          basis.q(i, col) = (i % 2 == 0 ? norm_single : -norm_single);
        }
        ++col;
      }
      break;
    }
    case BoundaryCondition::Symmetric:
      throw UnsupportedBoundary(
          "symmetric boundary matrix is not symmetric; spectral solves need periodic or neumann axes");
  }
  return basis;
}

GridBases build_bases(const Grid& grid) {
  return GridBases{eigendecompose(build_laplacian_matrix(grid.n(), grid.dr(), grid.bc_y())),
                   eigendecompose(build_laplacian_matrix(grid.m(), grid.dr(), grid.bc_x()))};
}

Matrix laplacian(const Matrix& values, const Grid& grid) {
  const int n = static_cast<int>(values.rows());
  const int m = static_cast<int>(values.cols());
  if (n != grid.n() || m != grid.m()) {
    throw DimensionError("laplacian: values do not match grid shape");
  }
  Matrix out(n, m);
  const BoundaryRow edge_x = boundary_row(grid.bc_x());
  for (int i = 0; i < n; ++i) {
    second_difference_x(values.row(i).data(), out.row(i).data(), m, edge_x);
  }

  const BoundaryRow edge_y = boundary_row(grid.bc_y());
  for (int i = 0; i < n; ++i) {
    const double* self = values.row(i).data();
    double* o = out.row(i).data();
    if (i > 0 && i < n - 1) {
      const double* up = values.row(i - 1).data();
      const double* down = values.row(i + 1).data();
      for (int j = 0; j < m; ++j) {
        o[j] += up[j] - 2.0 * self[j] + down[j];
      }
      continue;
    }
    const double* inward = values.row(i == 0 ? 1 : n - 2).data();
    const double* wrap = values.row(i == 0 ? n - 1 : 0).data();
    for (int j = 0; j < m; ++j) {
      double acc = edge_y.self * self[j] + edge_y.inward * inward[j];
      if (edge_y.wrap != 0.0) acc += edge_y.wrap * wrap[j];
      o[j] += acc;
    }
  }
  out *= 1.0 / (grid.dr() * grid.dr());
  return out;
}

Field apply_laplacian(const Field& f) { return f.with_values(laplacian(f.values(), f.grid())); }

Field apply_biharmonic(const Field& f) {
  return f.with_values(laplacian(laplacian(f.values(), f.grid()), f.grid()));
}

Matrix spectral_transform(const Matrix& values, const GridBases& bases, TransformDirection direction) {
  if (values.rows() != bases.rows.q.rows() || values.cols() != bases.cols.q.rows()) {
    throw DimensionError("spectral_transform: values do not match basis sizes");
  }
  if (direction == TransformDirection::Forward) {
    Matrix tmp = values * bases.cols.q;
    return bases.rows.q.transpose() * tmp;
  }
  Matrix tmp = values * bases.cols.q.transpose();
  return bases.rows.q * tmp;
}

Field spectral_transform(const Field& f, const GridBases& bases, TransformDirection direction) {
  return f.with_values(spectral_transform(f.values(), bases, direction));
}

Matrix eigenvalue_sums(const GridBases& bases) {
  const auto n = bases.rows.d.size();
  const auto m = bases.cols.d.size();
  Matrix sums(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      sums(i, j) = bases.rows.d(i) + bases.cols.d(j);
    }
  }
  return sums;
}

}  // namespace phasefield
