#pragma once

#include "phasefield/energetics.hpp"
#include "phasefield/grid.hpp"
#include "phasefield/model.hpp"

namespace phasefield {

struct StepInputs {
  const Field& phi;
  const Field& T;
  const Field& h;
  PhysicalConstants constants;
  double dt;
};

/// Forward Euler Allen-Cahn step, phi - dt M mu.
Field explicit_ac_step(const StepInputs& in, const BulkEnergy& bulk = {});

/// Forward Euler Cahn-Hilliard step, phi + dt M lap(mu).
Field explicit_ch_step(const StepInputs& in, const BulkEnergy& bulk = {});

/// Largest stable forward Euler step for constant parameters:
/// dr^2 / (4 gamma) for AC, dr^2 / (4 + 32 gamma / dr^2) for CH.
double explicit_stability_limit(Model model, double gamma, double dr);

/// Divergence test used to halt trajectories: any non-finite entry or
/// max |phi| above `bound`.
bool is_diverged(const Field& phi, double bound = 1e6);

}  // namespace phasefield
