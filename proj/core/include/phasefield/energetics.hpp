#pragma once

#include "phasefield/grid.hpp"

namespace phasefield {

struct PhysicalConstants {
  double gamma = 0.01;    // gradient energy coefficient
  double mobility = 1.0;  // constant scalar mobility

  /// Throws InvalidArgument unless gamma > 0 and mobility > 0.
  void validate() const;
};

/// Landau quartic f = phi^4 + T phi^2 + h phi.
double bulk_energy_density(double phi, double T, double h) noexcept;

/// df/dphi = 4 phi^3 + 2 T phi + h.
double bulk_energy_derivative(double phi, double T, double h) noexcept;

/// Bulk free-energy density and its derivative. Explicit steppers and the
/// energy diagnostics take this as a parameter; the implicit splitting is
/// specific to the Landau quartic.
struct BulkEnergy {
  using Fn = double (*)(double phi, double T, double h);
  Fn density = &bulk_energy_density;
  Fn derivative = &bulk_energy_derivative;
};

/// mu = f'(phi) - gamma lap(phi), cell by cell.
Field chemical_potential(const Field& phi, const Field& T, const Field& h, const PhysicalConstants& constants,
                         const BulkEnergy& bulk = {});

/// Discrete Ginzburg-Landau energy sum [f(phi) + gamma/2 |grad phi|^2] dr^2.
///
/// |grad phi|^2 at a node averages the squared forward and backward
/// differences along each axis, with ghost values taken from the axis
/// boundary condition. Summed over the grid this is the edge energy
/// -1/2 phi . lap(phi) dr^2 for periodic and Neumann axes, i.e. exactly the
/// functional whose gradient is the discrete chemical potential.
double total_free_energy(const Field& phi, const Field& T, const Field& h, const PhysicalConstants& constants,
                         const BulkEnergy& bulk = {});

/// Gradient part alone, sum |grad phi|^2 dr^2 (without gamma/2).
double gradient_norm_sq(const Field& phi);

}  // namespace phasefield
