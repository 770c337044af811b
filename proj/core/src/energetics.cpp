#include "phasefield/energetics.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/spectral.hpp"

namespace phasefield {

namespace {

double ghost_low(BoundaryCondition bc, double first, double second, double last) {
  switch (bc) {
    case BoundaryCondition::Periodic:
      return last;
    case BoundaryCondition::Neumann:
      return first;
    case BoundaryCondition::Symmetric:
      return second;
  }
  return first;
}

// Sum over nodes of (fwd^2 + bwd^2) / 2 along one line of `count` samples
// separated by `stride`.
double line_gradient_sq(const double* v, int count, std::ptrdiff_t stride, BoundaryCondition bc) {
  double interior = 0.0;
  for (int k = 0; k + 1 < count; ++k) {
    const double diff = v[(k + 1) * stride] - v[k * stride];
    interior += diff * diff;
  }
  const double first = v[0];
  const double second = v[stride];
  const double last = v[(count - 1) * stride];
  const double before_last = v[(count - 2) * stride];
  const double low = first - ghost_low(bc, first, second, last);
  const double high = ghost_low(bc, last, before_last, first) - last;
  return interior + 0.5 * (low * low + high * high);
}

}  // namespace

void PhysicalConstants::validate() const {
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (!(mobility > 0.0)) throw InvalidArgument("mobility must be positive");
}

double bulk_energy_density(double phi, double T, double h) noexcept {
  const double phi2 = phi * phi;
  return phi2 * phi2 + T * phi2 + h * phi;
}

double bulk_energy_derivative(double phi, double T, double h) noexcept {
  return 4.0 * phi * phi * phi + 2.0 * T * phi + h;
}

Field chemical_potential(const Field& phi, const Field& T, const Field& h, const PhysicalConstants& constants,
                         const BulkEnergy& bulk) {
  require_same_shape(phi, T, "chemical_potential");
  require_same_shape(phi, h, "chemical_potential");
  Matrix mu = laplacian(phi.values(), phi.grid());
  mu *= -constants.gamma;
  const auto& p = phi.values();
  const auto& t = T.values();
  const auto& hv = h.values();
  for (Eigen::Index i = 0; i < mu.rows(); ++i) {
    for (Eigen::Index j = 0; j < mu.cols(); ++j) {
      mu(i, j) += bulk.derivative(p(i, j), t(i, j), hv(i, j));
    }
  }
  return phi.with_values(std::move(mu));
}

double gradient_norm_sq(const Field& phi) {
  const Grid& g = phi.grid();
  const Matrix& v = phi.values();
  double sum = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    sum += line_gradient_sq(v.row(i).data(), g.m(), 1, g.bc_x());
  }
  for (int j = 0; j < g.m(); ++j) {
    sum += line_gradient_sq(v.data() + j, g.n(), g.m(), g.bc_y());
  }
  // diff^2 / dr^2 per node, times the cell area dr^2.
  return sum;
}

double total_free_energy(const Field& phi, const Field& T, const Field& h, const PhysicalConstants& constants,
                         const BulkEnergy& bulk) {
  require_same_shape(phi, T, "total_free_energy");
  require_same_shape(phi, h, "total_free_energy");
  const auto& p = phi.values();
  const auto& t = T.values();
  const auto& hv = h.values();
  double bulk_sum = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      bulk_sum += bulk.density(p(i, j), t(i, j), hv(i, j));
    }
  }
  return bulk_sum * phi.grid().cell_area() + 0.5 * constants.gamma * gradient_norm_sq(phi);
}

}  // namespace phasefield
