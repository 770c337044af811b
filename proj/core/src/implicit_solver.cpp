#include "phasefield/implicit_solver.hpp"

#include "phasefield/errors.hpp"

#include <cmath>
#include <sstream>

namespace phasefield {

namespace {

void require_spectral_boundaries(const Grid& grid) {
  if (grid.bc_x() == BoundaryCondition::Symmetric || grid.bc_y() == BoundaryCondition::Symmetric) {
    throw UnsupportedBoundary("implicit solves need periodic or neumann boundaries on both axes");
  }
}

void require_basis_fit(const Field& b, const GridBases& bases) {
  if (bases.rows.d.size() != b.rows() || bases.cols.d.size() != b.cols()) {
    throw DimensionError("spectral bases do not match the field shape");
  }
}

Field divide_in_spectral_space(const Field& b, const Matrix& omega, const GridBases& bases) {
  for (Eigen::Index i = 0; i < omega.rows(); ++i) {
    for (Eigen::Index j = 0; j < omega.cols(); ++j) {
      if (!(std::abs(omega(i, j)) > kOmegaGuard)) {
        std::ostringstream msg;
        msg << "spectral divisor Omega(" << i << ", " << j << ") = " << omega(i, j) << " is singular";
        throw SingularCoefficient(msg.str());
      }
    }
  }
  Matrix y = spectral_transform(b.values(), bases, TransformDirection::Forward);
  y.array() /= omega.array();
  return b.with_values(spectral_transform(y, bases, TransformDirection::Inverse));
}

Matrix implicit_fraction(const Field& T, const Field& xi) {
  return ((1.0 - xi.values().array()) * T.values().array()).matrix();
}

}  // namespace

AcCoefficients assemble_ac_coefficients(const Field& phi, const Field& T, const Field& h, const Field& xi,
                                        const PhysicalConstants& constants, double dt) {
  require_same_shape(phi, T, "assemble_ac_coefficients");
  require_same_shape(phi, h, "assemble_ac_coefficients");
  require_same_shape(phi, xi, "assemble_ac_coefficients");
  if (!(dt >= 0.0)) throw InvalidArgument("implicit step needs dt >= 0");
  const double step = constants.mobility * dt;

  const auto p = phi.values().array();
  const auto t = T.values().array();
  const auto x = xi.values().array();
  Matrix eps = (2.0 * step * implicit_fraction(T, xi).array()).matrix();
  Matrix b = (p - 2.0 * step * x * t * p - 4.0 * step * p.cube() - step * h.values().array()).matrix();
  return AcCoefficients{phi.with_values(std::move(eps)), -step * constants.gamma, phi.with_values(std::move(b))};
}

ChCoefficients assemble_ch_coefficients(const Field& phi, const Field& T, const Field& h, const Field& xi,
                                        const PhysicalConstants& constants, double dt) {
  require_same_shape(phi, T, "assemble_ch_coefficients");
  require_same_shape(phi, h, "assemble_ch_coefficients");
  require_same_shape(phi, xi, "assemble_ch_coefficients");
  if (!(dt >= 0.0)) throw InvalidArgument("implicit step needs dt >= 0");
  const double step = constants.mobility * dt;
  const Grid& grid = phi.grid();

  const Matrix kappa = implicit_fraction(T, xi);
  Matrix c0 = (1.0 - 2.0 * step * laplacian(kappa, grid).array()).matrix();
  Matrix c2 = (-2.0 * step * kappa.array()).matrix();

  const auto p = phi.values().array();
  const Matrix explicit_mu =
      (2.0 * xi.values().array() * T.values().array() * p + 4.0 * p.cube() + h.values().array()).matrix();
  Matrix b = phi.values() + step * laplacian(explicit_mu, grid);
  return ChCoefficients{phi.with_values(std::move(c0)), phi.with_values(std::move(c2)), constants.gamma * step,
                        phi.with_values(std::move(b))};
}

Matrix ac_omega(const AcCoefficients& coeffs, const GridBases& bases) {
  require_basis_fit(coeffs.b, bases);
  return (1.0 + coeffs.eps.values().array() + coeffs.eta * eigenvalue_sums(bases).array()).matrix();
}

Matrix ch_omega(const ChCoefficients& coeffs, const GridBases& bases) {
  require_basis_fit(coeffs.b, bases);
  const Matrix s = eigenvalue_sums(bases);
  return (coeffs.c0.values().array() + coeffs.c2.values().array() * s.array() + coeffs.c4 * s.array().square())
      .matrix();
}

Field solve_ac_step(const AcCoefficients& coeffs, const GridBases& bases, double dt) {
  require_spectral_boundaries(coeffs.b.grid());
  if (dt == 0.0) return coeffs.b;
  return divide_in_spectral_space(coeffs.b, ac_omega(coeffs, bases), bases);
}

Field solve_ch_step(const ChCoefficients& coeffs, const GridBases& bases, double dt) {
  require_spectral_boundaries(coeffs.b.grid());
  if (dt == 0.0) return coeffs.b;
  return divide_in_spectral_space(coeffs.b, ch_omega(coeffs, bases), bases);
}

Matrix dense_laplacian(const Grid& grid) {
  const int n = grid.n();
  const int m = grid.m();
  const Matrix an = build_laplacian_matrix(n, grid.dr(), grid.bc_y()).entries();
  const Matrix am = build_laplacian_matrix(m, grid.dr(), grid.bc_x()).entries();
  const long dof = grid.dof();
  Matrix lap = Matrix::Zero(dof, dof);
  // Row-major index r = i m + j. (A_n F)_ij = sum_k An(i,k) F_kj and
  // (F A_m^T)_ij = sum_k Am(j,k) F_ik.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const long r = static_cast<long>(i) * m + j;
      for (int k = 0; k < n; ++k) {
        if (an(i, k) != 0.0) lap(r, static_cast<long>(k) * m + j) += an(i, k);
      }
      for (int k = 0; k < m; ++k) {
        if (am(j, k) != 0.0) lap(r, static_cast<long>(i) * m + k) += am(j, k);
      }
    }
  }
  return lap;
}

Field dense_reference_step(Model model, const Field& phi, const Field& T, const Field& h, const Field& xi,
                           const PhysicalConstants& constants, double dt) {
  const Grid& grid = phi.grid();
  if (grid.dof() > kDenseReferenceMaxDof) {
    throw InvalidArgument("dense reference is limited to " + std::to_string(kDenseReferenceMaxDof) + " nodes");
  }
  const long dof = grid.dof();
  const Matrix lap = dense_laplacian(grid);
  Matrix system(dof, dof);
  Eigen::VectorXd rhs(dof);

  auto flatten = [](const Field& f) { return Eigen::Map<const Eigen::VectorXd>(f.values().data(), f.values().size()); };

  if (model == Model::AllenCahn) {
    const AcCoefficients c = assemble_ac_coefficients(phi, T, h, xi, constants, dt);
    system = c.eta * lap;
    system.diagonal().array() += 1.0 + flatten(c.eps).array();
    rhs = flatten(c.b);
  } else {
    const ChCoefficients c = assemble_ch_coefficients(phi, T, h, xi, constants, dt);
    system = flatten(c.c2).asDiagonal() * lap;
    system.noalias() += c.c4 * (lap * lap);
    system.diagonal() += flatten(c.c0);
    rhs = flatten(c.b);
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw SingularCoefficient("dense reference system is singular (rcond " + std::to_string(rcond) + ")");
  }
  const Eigen::VectorXd x = lu.solve(rhs);
  Matrix out(grid.n(), grid.m());
  Eigen::Map<Eigen::VectorXd>(out.data(), out.size()) = x;
  return phi.with_values(std::move(out));
}

Field apply_ac_operator(const AcCoefficients& coeffs, const Field& phi) {
  const Matrix lap = laplacian(phi.values(), phi.grid());
  return phi.with_values(
      ((1.0 + coeffs.eps.values().array()) * phi.values().array() + coeffs.eta * lap.array()).matrix());
}

Field apply_ch_operator(const ChCoefficients& coeffs, const Field& phi) {
  const Matrix lap = laplacian(phi.values(), phi.grid());
  const Matrix bilap = laplacian(lap, phi.grid());
  return phi.with_values((coeffs.c0.values().array() * phi.values().array() +
                          coeffs.c2.values().array() * lap.array() + coeffs.c4 * bilap.array())
                             .matrix());
}

}  // namespace phasefield
