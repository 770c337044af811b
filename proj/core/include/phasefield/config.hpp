#pragma once

#include "phasefield/energetics.hpp"
#include "phasefield/grid.hpp"
#include "phasefield/model.hpp"
#include "phasefield/scenarios.hpp"
#include "phasefield/schedule.hpp"
#include "phasefield/simulation.hpp"
#include "phasefield/splitting.hpp"
#include "phasefield/stability.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace phasefield {

/// Fully resolved run description.
///
/// Config files are JSON. A config may name a built-in `scenario` and then
/// override any part of it; otherwise `model`, `solver`, `grid`, `dt` and
/// `t_final` are required. Schedule rows use the table layout
/// {"t_begin": 0, "t_end": 0.05, "T": [T0, T1, ...], "h": [h0, h1, ...]}
/// with one entry per region id.
struct RunConfig {
  std::optional<std::string> scenario_name;
  Model model;
  SolverKind solver;
  Grid grid;
  PhysicalConstants constants;
  double dt;
  double t_final;
  ParameterSchedule schedule;
  std::optional<std::filesystem::path> cell_map_path;
  InitialCondition initial;
  SplittingPolicy splitting;
  RecordingSpec recording;
  PerturbationOptions perturbation;
  std::uint64_t seed;
  std::filesystem::path output_dir;

  Scenario scenario() const;
};

/// Relative paths inside the document resolve against `base_dir`. A run
/// manifest (an object with a "config" member) is accepted as well.
RunConfig parse_config(const nlohmann::json& document, const std::filesystem::path& base_dir = {});

/// Throws ConfigError (key "") for unreadable or malformed files.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RunConfig& config);

struct RunSummary {
  long steps_taken = 0;
  double final_time = 0.0;
  std::optional<long> diverged_at;
  bool gradient_stable = false;
  double mass_drift = 0.0;
};

RunSummary summarize(const RunResult& result);

/// Writes series.csv, one snapshot pair per recorded snapshot and
/// manifest.json (resolved config plus summary) into config.output_dir.
/// Refuses a non-empty existing directory unless `force`.
std::vector<std::filesystem::path> write_outputs(const RunResult& result, const RunConfig& config,
                                                 bool force = false);

/// Creates (or, with force, clears) an output directory.
void prepare_output_dir(const std::filesystem::path& dir, bool force);

}  // namespace phasefield
