#pragma once

#include "phasefield/simulation.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace phasefield {

enum class Verdict { Stable, Unstable };

std::string_view to_string(Verdict verdict) noexcept;

struct PerturbationOptions {
  double magnitude = 1e-6;       // per-node uniform perturbation in [-magnitude, magnitude]
  std::uint64_t seed = 20220621;
  double growth_threshold = 2.0;  // Stable iff the norm never exceeds this times its initial value
  double blowup_threshold = 1e3;  // the run halts once the norm exceeds this times its initial value
  long stride = 1;
  bool record_energy = true;
};

struct PerturbationReport {
  Verdict verdict = Verdict::Stable;
  std::vector<SeriesRecord> series;  // unperturbed run, with l2_perturbation filled
  std::optional<long> diverged_at;
  long steps_taken = 0;
  double initial_norm = 0.0;
  double max_norm_ratio = 0.0;  // max_k l2_k / l2_0 (0 when l2_0 == 0)
  bool gradient_stable = false;
  double mass_drift = 0.0;
};

/// Runs the scenario twice, once from its initial field and once from the
/// same field plus a seeded per-node perturbation, and tracks the RMS
/// difference between the two trajectories.
///
/// Unstable when either run diverges or the difference exceeds
/// growth_threshold times its initial value at any recorded step; Stable
/// otherwise. Trajectories stop early once the difference passes
/// blowup_threshold times its initial value.
PerturbationReport perturbation_stability_test(const Scenario& scenario, SolverKind solver, double dt,
                                               const SplittingPolicy& policy, const PerturbationOptions& options = {});

/// True iff F[k+1] <= F[k] + rel_tol |F[k]| for all consecutive samples.
bool gradient_stability_check(std::span<const double> energies, double rel_tol = 1e-9);

/// max_k |m_k - m_0| / |m_0|, or the absolute drift when m_0 == 0.
double conservation_check(std::span<const double> masses);

std::vector<double> energies_of(const std::vector<SeriesRecord>& series);
std::vector<double> masses_of(const std::vector<SeriesRecord>& series);

}  // namespace phasefield
