#pragma once

#include "phasefield/energetics.hpp"
#include "phasefield/grid.hpp"
#include "phasefield/model.hpp"
#include "phasefield/scenarios.hpp"
#include "phasefield/schedule.hpp"
#include "phasefield/spectral.hpp"
#include "phasefield/splitting.hpp"

#include <optional>
#include <vector>

namespace phasefield {

/// One time step of either solver for a fixed model and grid. Spectral
/// bases are built once in the constructor for the implicit solver.
class Stepper {
 public:
  Stepper(Model model, SolverKind solver, const Grid& grid, PhysicalConstants constants, SplittingPolicy policy);

  Field advance(const Field& phi, const Field& T, const Field& h, double dt) const;

  Model model() const noexcept { return model_; }
  SolverKind solver() const noexcept { return solver_; }
  const PhysicalConstants& constants() const noexcept { return constants_; }
  const SplittingPolicy& policy() const noexcept { return policy_; }

 private:
  Model model_;
  SolverKind solver_;
  PhysicalConstants constants_;
  SplittingPolicy policy_;
  std::optional<GridBases> bases_;
};

struct RecordingSpec {
  long series_stride = 1;
  std::vector<double> snapshot_times;
  bool record_energy = true;  // free_energy is NaN when disabled
};

struct SeriesRecord {
  long step = 0;
  double time = 0.0;
  double free_energy = 0.0;
  double mass = 0.0;
  std::optional<double> l2_perturbation;
  double max_abs_phi = 0.0;
};

struct Snapshot {
  long step;
  double time;
  Field field;
};

struct RunResult {
  std::vector<SeriesRecord> series;
  std::vector<Snapshot> snapshots;
  std::optional<long> diverged_at;
  long steps_taken = 0;
  Field final_field;
};

/// Number of constant steps that reach t_final: ceil(t_final / dt), at
/// least one.
long step_count(double t_final, double dt);

/// Advances one field through a scenario with constant dt. Parameters for
/// the step t_k -> t_k + dt are taken from the schedule at t_k.
class Trajectory {
 public:
  Trajectory(const Scenario& scenario, const Stepper& stepper, double dt, Field initial);

  /// Takes one step. Returns false (and marks the trajectory diverged) if
  /// the new field is non-finite or exceeds the divergence bound.
  bool advance();

  const Field& field() const noexcept { return field_; }
  long step() const noexcept { return step_; }
  double time() const noexcept { return static_cast<double>(step_) * dt_; }
  bool diverged() const noexcept { return diverged_; }

  /// Parameters active at the current time (clamped to the schedule end,
  /// for diagnostics at the final step).
  const ParameterFields& parameters();

  SeriesRecord record(bool with_energy);

 private:
  const ParameterFields& parameters_at(double t);

  const Scenario* scenario_;
  const Stepper* stepper_;
  double dt_;
  Field field_;
  long step_ = 0;
  bool diverged_ = false;
  std::optional<std::size_t> cached_row_;
  std::optional<ParameterFields> cached_;
};

RunResult run_simulation(const Scenario& scenario, SolverKind solver, double dt, const SplittingPolicy& policy,
                         const RecordingSpec& recording = {});

/// Same, starting from a caller-supplied field instead of the scenario's
/// initial condition.
RunResult run_simulation(const Scenario& scenario, const Field& initial, SolverKind solver, double dt,
                         const SplittingPolicy& policy, const RecordingSpec& recording = {});

struct SteadyState {
  Field field;
  long steps;
  bool converged;
  double last_change;  // max |phi_new - phi_old| of the final step
};

/// Steps with the parameters at t = 0 until max |delta phi| per step drops
/// below `tolerance` or `max_steps` is reached. Requires a single-row
/// schedule.
SteadyState relax_to_steady_state(const Scenario& scenario, SolverKind solver, double dt,
                                  const SplittingPolicy& policy, double tolerance, long max_steps);

}  // namespace phasefield
