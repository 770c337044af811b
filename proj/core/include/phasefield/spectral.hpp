#pragma once

#include "phasefield/grid.hpp"

namespace phasefield {

/// 1-D second-difference matrix with boundary corners folded in, scaled by
/// 1/dr^2. Rows always sum to zero.
///
///   Periodic  : tridiag(1, -2, 1) plus 1 in the two far corners
///   Neumann   : tridiag(1, -2, 1) with -1 on the two diagonal corners
///   Symmetric : tridiag(1, -2, 1) with 2 next to the two diagonal corners
///               (not symmetric as a matrix)
class LaplacianMatrix {
 public:
  LaplacianMatrix(int size, double dr, BoundaryCondition bc, Matrix entries)
      : size_(size), dr_(dr), bc_(bc), entries_(std::move(entries)) {}

  int size() const noexcept { return size_; }
  double dr() const noexcept { return dr_; }
  BoundaryCondition bc() const noexcept { return bc_; }
  const Matrix& entries() const noexcept { return entries_; }

 private:
  int size_;
  double dr_;
  BoundaryCondition bc_;
  Matrix entries_;
};

LaplacianMatrix build_laplacian_matrix(int size, double dr, BoundaryCondition bc);

/// Orthogonal eigendecomposition A = Q diag(d) Q^T. Eigenvalues are ordered
/// from 0 downwards (non-increasing); columns of `q` follow the same order.
struct SpectralBasis {
  Matrix q;
  Vector d;
};

/// Closed-form basis: cosine modes for Neumann, cosine/sine pairs for
/// Periodic. Throws UnsupportedBoundary for Symmetric.
SpectralBasis eigendecompose(const LaplacianMatrix& a);

/// Per-axis bases of a grid, built once per run and shared read-only.
struct GridBases {
  SpectralBasis rows;  // n x n, couples the y axis
  SpectralBasis cols;  // m x m, couples the x axis
};

GridBases build_bases(const Grid& grid);

/// A_n F + F A_m^T applied with the banded structure of A (O(n m)).
///
/// For periodic and Neumann axes A_m^T = A_m, which is the usual two-sided
/// product; the transpose only matters for a Symmetric x axis, where it
/// reproduces the mirrored-ghost stencil.
Matrix laplacian(const Matrix& values, const Grid& grid);

Field apply_laplacian(const Field& f);

/// Laplacian applied twice.
Field apply_biharmonic(const Field& f);

enum class TransformDirection { Forward, Inverse };

/// Forward: Q_n^T F Q_m. Inverse: Q_n Y Q_m^T.
Matrix spectral_transform(const Matrix& values, const GridBases& bases, TransformDirection direction);

Field spectral_transform(const Field& f, const GridBases& bases, TransformDirection direction);

/// Matrix of eigenvalue sums d_n[i] + d_m[j].
Matrix eigenvalue_sums(const GridBases& bases);

}  // namespace phasefield
