#pragma once

#include "phasefield/energetics.hpp"
#include "phasefield/grid.hpp"
#include "phasefield/model.hpp"
#include "phasefield/schedule.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phasefield {

struct InitialCondition {
  enum class Kind {
    SharpInterfaceX,  // -1 for x < width / 2, +1 otherwise
    SquareInclusion,  // centred block of `inside` in a sea of `outside`
    UniformNoise,     // i.i.d. uniform in [-amplitude, amplitude]
    FromFile,         // snapshot CSV
  };

  Kind kind = Kind::UniformNoise;
  double side_fraction = 0.4;  // of each edge
  double inside = 1.0;
  double outside = -1.0;
  double amplitude = 0.1;
  std::uint64_t seed = 1;
  std::string path;
};

std::string_view to_string(InitialCondition::Kind kind) noexcept;
InitialCondition::Kind parse_initial_kind(std::string_view text);

Field make_initial_field(const InitialCondition& initial, const Grid& grid);

/// Reproducible uniform deviates in [-amplitude, amplitude], row-major fill
/// from mt19937_64 seeded with `seed` (53-bit mantissa construction).
Matrix uniform_noise(int rows, int cols, double amplitude, std::uint64_t seed);

struct Scenario {
  std::string name;
  Grid grid;
  Model model;
  PhysicalConstants constants;
  ParameterSchedule schedule;
  InitialCondition initial;
  double t_final;

  /// Throws InvalidArgument if the schedule does not cover [0, t_final].
  void validate() const;
};

/// Grid-size and duration overrides applied on top of a named benchmark.
/// Overriding n or m without dr keeps the physical domain size; band
/// heights scale with n.
struct ScenarioOverrides {
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> dr;
  std::optional<double> t_final;
  std::optional<BoundaryCondition> bc;
};

std::vector<std::string> scenario_names();

/// ac_sharp_interface, ch_square_inclusion, ac_banded, ch_banded,
/// ch_layer_retraction.
Scenario build_scenario(std::string_view name, const ScenarioOverrides& overrides = {});

/// Four-period banded schedules for the varying-parameter benchmarks.
/// Region 0 carries (T+, h+), region 1 carries (T-, h-).
std::vector<ScheduleRow> ac_banded_rows();
std::vector<ScheduleRow> ch_banded_rows();

}  // namespace phasefield
