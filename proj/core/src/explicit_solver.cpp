#include "phasefield/explicit_solver.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/spectral.hpp"

#include <cmath>

namespace phasefield {

Field explicit_ac_step(const StepInputs& in, const BulkEnergy& bulk) {
  if (!(in.dt >= 0.0)) throw InvalidArgument("explicit step needs dt >= 0");
  if (in.dt == 0.0) return in.phi;
  const Field mu = chemical_potential(in.phi, in.T, in.h, in.constants, bulk);
  return in.phi.with_values(in.phi.values() - (in.dt * in.constants.mobility) * mu.values());
}

Field explicit_ch_step(const StepInputs& in, const BulkEnergy& bulk) {
  if (!(in.dt >= 0.0)) throw InvalidArgument("explicit step needs dt >= 0");
  if (in.dt == 0.0) return in.phi;
  const Field mu = chemical_potential(in.phi, in.T, in.h, in.constants, bulk);
  return in.phi.with_values(in.phi.values() + (in.dt * in.constants.mobility) * laplacian(mu.values(), mu.grid()));
}

double explicit_stability_limit(Model model, double gamma, double dr) {
  if (!(gamma > 0.0) || !(dr > 0.0)) throw InvalidArgument("stability limit needs gamma > 0 and dr > 0");
  const double dr2 = dr * dr;
  if (model == Model::AllenCahn) return dr2 / (4.0 * gamma);
  return dr2 / (4.0 + 32.0 * gamma / dr2);
}

bool is_diverged(const Field& phi, double bound) {
  const Matrix& v = phi.values();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double x = v.data()[k];
    if (!std::isfinite(x) || std::abs(x) > bound) return true;
  }
  return false;
}

}  // namespace phasefield
