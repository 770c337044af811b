#pragma once

#include "phasefield/energetics.hpp"
#include "phasefield/grid.hpp"
#include "phasefield/model.hpp"
#include "phasefield/spectral.hpp"

namespace phasefield {

/// Semi-implicit Allen-Cahn step written as
///   (1 + eps) . phi_new + eta lap(phi_new) = b
/// with eps = 2 dt (1 - xi) T, eta = -dt gamma and
/// b = phi - 2 dt xi T phi - 4 dt phi^3 - dt h.
struct AcCoefficients {
  Field eps;
  double eta;
  Field b;
};

/// Semi-implicit Cahn-Hilliard step written as
///   c0 . phi_new + c2 . lap(phi_new) + c4 lap^2(phi_new) = b
/// with c0 = 1 - 2 dt lap((1 - xi) T), c2 = -2 dt (1 - xi) T, c4 = gamma dt
/// and b = phi + dt lap(2 xi T phi + 4 phi^3 + h).
struct ChCoefficients {
  Field c0;
  Field c2;
  double c4;
  Field b;
};

/// Smallest |Omega| accepted by the spectral division.
inline constexpr double kOmegaGuard = 1e-14;

/// Coefficients use the mobility-scaled step M dt.
AcCoefficients assemble_ac_coefficients(const Field& phi, const Field& T, const Field& h, const Field& xi,
                                        const PhysicalConstants& constants, double dt);

ChCoefficients assemble_ch_coefficients(const Field& phi, const Field& T, const Field& h, const Field& xi,
                                        const PhysicalConstants& constants, double dt);

/// Omega_ij = 1 + eps_ij + eta (d_n[i] + d_m[j]).
///
/// The spatial coefficient is indexed at the same (i, j) as the spectral
/// mode. That is exact only when eps is spatially uniform; otherwise it is
/// the direct-solve approximation of the variable-coefficient system.
Matrix ac_omega(const AcCoefficients& coeffs, const GridBases& bases);

/// Omega_ij = c0_ij + c2_ij s_ij + c4 s_ij^2 with s_ij = d_n[i] + d_m[j].
Matrix ch_omega(const ChCoefficients& coeffs, const GridBases& bases);

/// Direct spectral solve: B = Q_n^T b Q_m, Y = B ./ Omega, phi = Q_n Y Q_m^T.
/// Throws UnsupportedBoundary for symmetric axes and SingularCoefficient
/// when |Omega| falls below kOmegaGuard. dt == 0 returns b unchanged.
Field solve_ac_step(const AcCoefficients& coeffs, const GridBases& bases, double dt);

Field solve_ch_step(const ChCoefficients& coeffs, const GridBases& bases, double dt);

/// Largest grid accepted by dense_reference_step.
inline constexpr long kDenseReferenceMaxDof = 4096;

/// Assembles the full (n m) x (n m) system of the same semi-implicit step
/// with the same discrete Laplacian and solves it by LU with partial
/// pivoting. Verification oracle for the spectral solves.
Field dense_reference_step(Model model, const Field& phi, const Field& T, const Field& h, const Field& xi,
                           const PhysicalConstants& constants, double dt);

/// Dense 2-D Laplacian acting on row-major flattened fields.
Matrix dense_laplacian(const Grid& grid);

/// Left-hand operator of the implicit step applied to a field, evaluated
/// in physical space. Used for residual checks.
Field apply_ac_operator(const AcCoefficients& coeffs, const Field& phi);
Field apply_ch_operator(const ChCoefficients& coeffs, const Field& phi);

}  // namespace phasefield
