#include "phasefield/simulation.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/explicit_solver.hpp"
#include "phasefield/implicit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phasefield {

Stepper::Stepper(Model model, SolverKind solver, const Grid& grid, PhysicalConstants constants,
                 SplittingPolicy policy)
    : model_(model), solver_(solver), constants_(constants), policy_(policy) {
  constants_.validate();
  policy_.validate();
  if (solver_ == SolverKind::Implicit) {
    if (grid.bc_x() == BoundaryCondition::Symmetric || grid.bc_y() == BoundaryCondition::Symmetric) {
      throw UnsupportedBoundary("the implicit solver supports periodic and neumann boundaries only");
    }
    bases_.emplace(build_bases(grid));
  }
}

Field Stepper::advance(const Field& phi, const Field& T, const Field& h, double dt) const {
  if (solver_ == SolverKind::Explicit) {
    const StepInputs in{phi, T, h, constants_, dt};
    return model_ == Model::AllenCahn ? explicit_ac_step(in) : explicit_ch_step(in);
  }
  const Field xi = xi_field(T, phi, policy_);
  if (model_ == Model::AllenCahn) {
    return solve_ac_step(assemble_ac_coefficients(phi, T, h, xi, constants_, dt), *bases_, dt);
  }
  return solve_ch_step(assemble_ch_coefficients(phi, T, h, xi, constants_, dt), *bases_, dt);
}

long step_count(double t_final, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(t_final > 0.0)) throw InvalidArgument("t_final must be positive");
  const double ratio = t_final / dt;
  const double nearest = std::round(ratio);
  // Absorb round-off so that e.g. 0.2 / 0.01 gives 20, not 21.
  const long steps = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio) ? static_cast<long>(nearest)
                                                                               : static_cast<long>(std::ceil(ratio));
  return std::max(1L, steps);
}

Trajectory::Trajectory(const Scenario& scenario, const Stepper& stepper, double dt, Field initial)
    : scenario_(&scenario), stepper_(&stepper), dt_(dt), field_(std::move(initial)) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  require_same_shape(field_, create_field(scenario.grid, 0.0), "trajectory initial field");
}

const ParameterFields& Trajectory::parameters_at(double t) {
  const double clamped = std::min(t, scenario_->schedule.t_end());
  const std::size_t row = scenario_->schedule.row_index(clamped);
  if (!cached_row_ || *cached_row_ != row) {
    cached_.emplace(evaluate_schedule(scenario_->schedule, clamped, scenario_->grid));
    cached_row_ = row;
  }
  return *cached_;
}

const ParameterFields& Trajectory::parameters() { return parameters_at(time()); }

bool Trajectory::advance() {
  if (diverged_) return false;
  const ParameterFields& params = parameters_at(time());
  field_ = stepper_->advance(field_, params.T, params.h, dt_);
  ++step_;
  if (is_diverged(field_)) diverged_ = true;
  return !diverged_;
}

SeriesRecord Trajectory::record(bool with_energy) {
  SeriesRecord rec;
  rec.step = step_;
  rec.time = time();
  rec.mass = total_mass(field_);
  rec.max_abs_phi = max_abs(field_);
  rec.free_energy = std::numeric_limits<double>::quiet_NaN();
  if (with_energy) {
    const ParameterFields& params = parameters();
    rec.free_energy = total_free_energy(field_, params.T, params.h, stepper_->constants());
  }
  return rec;
}

RunResult run_simulation(const Scenario& scenario, SolverKind solver, double dt, const SplittingPolicy& policy,
                         const RecordingSpec& recording) {
  return run_simulation(scenario, make_initial_field(scenario.initial, scenario.grid), solver, dt, policy,
                        recording);
}

RunResult run_simulation(const Scenario& scenario, const Field& initial, SolverKind solver, double dt,
                         const SplittingPolicy& policy, const RecordingSpec& recording) {
  scenario.validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (recording.series_stride < 1) throw InvalidArgument("series_stride must be >= 1");
  const Stepper stepper(scenario.model, solver, scenario.grid, scenario.constants, policy);
  Trajectory trajectory(scenario, stepper, dt, initial);
  const long steps = step_count(scenario.t_final, dt);

  std::vector<double> pending = recording.snapshot_times;
  std::sort(pending.begin(), pending.end());
  auto take_snapshots = [&](RunResult& result) {
    const double t = trajectory.time();
    while (!pending.empty() && pending.front() <= t + 1e-12 * std::max(1.0, std::abs(t))) {
      result.snapshots.push_back(Snapshot{trajectory.step(), t, trajectory.field()});
      pending.erase(pending.begin());
    }
  };

  RunResult result{{}, {}, std::nullopt, 0, initial};
  result.series.push_back(trajectory.record(recording.record_energy));
  take_snapshots(result);

  for (long k = 1; k <= steps; ++k) {
    const bool ok = trajectory.advance();
    if (!ok) {
      result.diverged_at = trajectory.step();
      SeriesRecord rec;
      rec.step = trajectory.step();
      rec.time = trajectory.time();
      rec.free_energy = std::numeric_limits<double>::quiet_NaN();
      rec.mass = total_mass(trajectory.field());
      rec.max_abs_phi = max_abs(trajectory.field());
      result.series.push_back(rec);
      break;
    }
    if (k % recording.series_stride == 0 || k == steps) {
      result.series.push_back(trajectory.record(recording.record_energy));
    }
    take_snapshots(result);
  }
  result.steps_taken = trajectory.step();
  result.final_field = trajectory.field();
  return result;
}

SteadyState relax_to_steady_state(const Scenario& scenario, SolverKind solver, double dt,
                                  const SplittingPolicy& policy, double tolerance, long max_steps) {
  if (scenario.schedule.rows().size() != 1) {
    throw InvalidArgument("steady-state relaxation needs time-independent parameters");
  }
  const Stepper stepper(scenario.model, solver, scenario.grid, scenario.constants, policy);
  const ParameterFields params = evaluate_schedule(scenario.schedule, 0.0, scenario.grid);
  Field phi = make_initial_field(scenario.initial, scenario.grid);
  double change = std::numeric_limits<double>::infinity();
  long k = 0;
  while (k < max_steps) {
    Field next = stepper.advance(phi, params.T, params.h, dt);
    ++k;
    if (is_diverged(next)) {
      return SteadyState{std::move(next), k, false, std::numeric_limits<double>::infinity()};
    }
    change = (next.values() - phi.values()).cwiseAbs().maxCoeff();
    phi = std::move(next);
    if (change < tolerance) return SteadyState{std::move(phi), k, true, change};
  }
  return SteadyState{std::move(phi), k, false, change};
}

}  // namespace phasefield
