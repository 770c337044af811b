#include "phasefield/stability.hpp"

#include "phasefield/errors.hpp"

#include <algorithm>
#include <cmath>

namespace phasefield {

std::string_view to_string(Verdict verdict) noexcept {
  return verdict == Verdict::Stable ? "stable" : "unstable";
}

PerturbationReport perturbation_stability_test(const Scenario& scenario, SolverKind solver, double dt,
                                               const SplittingPolicy& policy, const PerturbationOptions& options) {
  scenario.validate();
  if (!(options.magnitude >= 0.0)) throw InvalidArgument("perturbation magnitude must be >= 0");
  if (options.stride < 1) throw InvalidArgument("perturbation stride must be >= 1");

  const Stepper stepper(scenario.model, solver, scenario.grid, scenario.constants, policy);
  const Field initial = make_initial_field(scenario.initial, scenario.grid);
  const Field perturbed_initial = initial.with_values(
      initial.values() + uniform_noise(initial.rows(), initial.cols(), options.magnitude, options.seed));

  Trajectory base(scenario, stepper, dt, initial);
  Trajectory perturbed(scenario, stepper, dt, perturbed_initial);
  const long steps = step_count(scenario.t_final, dt);

  PerturbationReport report;
  report.initial_norm = l2_difference(base.field(), perturbed.field());
  const double norm0 = report.initial_norm;
  bool exceeded_growth = false;

  auto record = [&] {
    SeriesRecord rec = base.record(options.record_energy);
    const double norm = l2_difference(base.field(), perturbed.field());
    rec.l2_perturbation = norm;
    if (norm0 > 0.0) {
      report.max_norm_ratio = std::max(report.max_norm_ratio, norm / norm0);
    }
    if (norm > options.growth_threshold * norm0 || !std::isfinite(norm)) exceeded_growth = true;
    report.series.push_back(rec);
    return norm;
  };

  record();
  for (long k = 1; k <= steps; ++k) {
    const bool ok_base = base.advance();
    const bool ok_perturbed = perturbed.advance();
    if (!ok_base || !ok_perturbed) {
      report.diverged_at = k;
      SeriesRecord rec;
      rec.step = k;
      rec.time = base.time();
      rec.free_energy = std::nan("");
      rec.mass = total_mass(base.field());
      rec.max_abs_phi = std::max(max_abs(base.field()), max_abs(perturbed.field()));
      rec.l2_perturbation = l2_difference(base.field(), perturbed.field());
      report.series.push_back(rec);
      break;
    }
    if (k % options.stride == 0 || k == steps) {
      const double norm = record();
      if (norm0 > 0.0 && norm > options.blowup_threshold * norm0) break;
    }
  }
  report.steps_taken = base.step();

  report.verdict = (report.diverged_at || exceeded_growth) ? Verdict::Unstable : Verdict::Stable;
  if (options.record_energy && !report.diverged_at) {
    report.gradient_stable = gradient_stability_check(energies_of(report.series));
  }
  report.mass_drift = conservation_check(masses_of(report.series));
  return report;
}

bool gradient_stability_check(std::span<const double> energies, double rel_tol) {
  if (energies.empty()) throw InvalidArgument("gradient_stability_check needs a non-empty series");
  for (std::size_t k = 0; k + 1 < energies.size(); ++k) {
    if (!std::isfinite(energies[k + 1])) return false;
    if (energies[k + 1] > energies[k] + rel_tol * std::abs(energies[k])) return false;
  }
  return std::isfinite(energies.front());
}

double conservation_check(std::span<const double> masses) {
  if (masses.empty()) throw InvalidArgument("conservation_check needs a non-empty series");
  const double m0 = masses.front();
  double drift = 0.0;
  for (double m : masses) drift = std::max(drift, std::abs(m - m0));
  return m0 != 0.0 ? drift / std::abs(m0) : drift;
}

std::vector<double> energies_of(const std::vector<SeriesRecord>& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& rec : series) out.push_back(rec.free_energy);
  return out;
}

std::vector<double> masses_of(const std::vector<SeriesRecord>& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& rec : series) out.push_back(rec.mass);
  return out;
}

}  // namespace phasefield
