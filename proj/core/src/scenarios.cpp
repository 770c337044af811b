#include "phasefield/scenarios.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/io.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace phasefield {

namespace {

ScheduleRow banded_row(double t_begin, double t_end, double t_plus, double t_minus, double h_plus, double h_minus) {
  return ScheduleRow{t_begin, t_end, {RegionValues{t_plus, h_plus}, RegionValues{t_minus, h_minus}}};
}

struct Defaults {
  int n;
  int m;
  double dr;
  BoundaryCondition bc;
};

}  // namespace

std::string_view to_string(InitialCondition::Kind kind) noexcept {
  switch (kind) {
    case InitialCondition::Kind::SharpInterfaceX:
      return "sharp_interface_x";
    case InitialCondition::Kind::SquareInclusion:
      return "square_inclusion";
    case InitialCondition::Kind::UniformNoise:
      return "uniform_noise";
    case InitialCondition::Kind::FromFile:
      return "from_file";
  }
  return "unknown";
}

InitialCondition::Kind parse_initial_kind(std::string_view text) {
  for (auto kind : {InitialCondition::Kind::SharpInterfaceX, InitialCondition::Kind::SquareInclusion,
                    InitialCondition::Kind::UniformNoise, InitialCondition::Kind::FromFile}) {
    if (text == to_string(kind)) return kind;
  }
  throw InvalidArgument("unknown initial condition '" + std::string(text) + "'");
}

Matrix uniform_noise(int rows, int cols, double amplitude, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  Matrix out(rows, cols);
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    // 53 random bits -> [0, 1), independent of the standard library's
    // distribution implementation.
    const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    out.data()[k] = amplitude * (2.0 * unit - 1.0);
  }
  return out;
}

Field make_initial_field(const InitialCondition& initial, const Grid& grid) {
  switch (initial.kind) {
    case InitialCondition::Kind::SharpInterfaceX: {
      Matrix v(grid.n(), grid.m());
      const double mid = 0.5 * grid.width();
      for (int j = 0; j < grid.m(); ++j) {
        v.col(j).setConstant(grid.x_center(j) < mid ? -1.0 : 1.0);
      }
      return Field(grid, std::move(v));
    }
    case InitialCondition::Kind::SquareInclusion: {
      if (!(initial.side_fraction > 0.0 && initial.side_fraction <= 1.0)) {
        throw InvalidArgument("square inclusion side_fraction must lie in (0, 1]");
      }
      Matrix v = Matrix::Constant(grid.n(), grid.m(), initial.outside);
      const double half_w = 0.5 * initial.side_fraction * grid.width();
      const double half_h = 0.5 * initial.side_fraction * grid.height();
      const double cx = 0.5 * grid.width();
      const double cy = 0.5 * grid.height();
      for (int i = 0; i < grid.n(); ++i) {
        for (int j = 0; j < grid.m(); ++j) {
          if (std::abs(grid.x_center(j) - cx) < half_w && std::abs(grid.y_center(i) - cy) < half_h) {
            v(i, j) = initial.inside;
          }
        }
      }
      return Field(grid, std::move(v));
    }
    case InitialCondition::Kind::UniformNoise:
      if (!(initial.amplitude >= 0.0)) throw InvalidArgument("noise amplitude must be >= 0");
      return Field(grid, uniform_noise(grid.n(), grid.m(), initial.amplitude, initial.seed));
    case InitialCondition::Kind::FromFile: {
      Matrix v = read_matrix_csv(initial.path);
      return Field(grid, std::move(v));
    }
  }
  throw InvalidArgument("unhandled initial condition");
}

void Scenario::validate() const {
  constants.validate();
  if (!(t_final > 0.0)) throw InvalidArgument("scenario t_final must be positive");
  if (!schedule.covers(t_final)) {
    throw InvalidArgument("schedule ends at t = " + std::to_string(schedule.t_end()) +
                          " but the run needs coverage up to t_final = " + std::to_string(t_final));
  }
  schedule.mask().check_grid(grid);
}

std::vector<ScheduleRow> ac_banded_rows() {
  return {banded_row(0.00, 0.05, 0.49, -4.13, -11.76, 3.24), banded_row(0.05, 0.10, 4.18, 0.81, -5.15, 2.41),
          banded_row(0.10, 0.15, 1.91, -2.51, -9.85, 4.88), banded_row(0.15, 0.20, 2.75, 2.23, -15.23, 8.05)};
}

std::vector<ScheduleRow> ch_banded_rows() {
  return {banded_row(0.00, 0.05, 9.44, 4.72, -22.84, 13.41), banded_row(0.05, 0.10, -7.52, 2.51, -19.08, -1.03),
          banded_row(0.10, 0.15, 9.73, 12.65, -23.46, 29.30), banded_row(0.15, 0.20, 25.31, 25.37, -54.69, 54.57)};
}

std::vector<std::string> scenario_names() {
  return {"ac_sharp_interface", "ch_square_inclusion", "ac_banded", "ch_banded", "ch_layer_retraction"};
}

Scenario build_scenario(std::string_view name, const ScenarioOverrides& overrides) {
  Defaults d{};
  Model model = Model::AllenCahn;
  PhysicalConstants constants;
  InitialCondition initial;
  double t_final = 1.0;
  enum class Layout { Uniform, AcBands, ChBands } layout = Layout::Uniform;
  constexpr int kBandCells = 10;
  constexpr int kBandGrid = 50;

  if (name == "ac_sharp_interface") {
    d = {500, 500, 1.0 / 500.0, BoundaryCondition::Neumann};
    constants = {0.01, 1.0};
    initial.kind = InitialCondition::Kind::SharpInterfaceX;
    t_final = 1.0;
  } else if (name == "ch_square_inclusion") {
    d = {100, 100, 0.01, BoundaryCondition::Periodic};
    model = Model::CahnHilliard;
    constants = {4e-4, 1.0};
    initial.kind = InitialCondition::Kind::SquareInclusion;
    t_final = 0.1;
  } else if (name == "ac_banded" || name == "ch_banded") {
    d = {kBandGrid, kBandGrid, 0.02, BoundaryCondition::Periodic};
    constants = {0.01, 1.0};
    initial.kind = InitialCondition::Kind::UniformNoise;
    initial.amplitude = 0.1;
    initial.seed = 42;
    t_final = 0.2;
    if (name == "ac_banded") {
      layout = Layout::AcBands;
    } else {
      layout = Layout::ChBands;
      model = Model::CahnHilliard;
    }
  } else if (name == "ch_layer_retraction") {
    d = {400, 800, 1e-4, BoundaryCondition::Periodic};
    model = Model::CahnHilliard;
    constants = {4e-8, 1.0};
    initial.kind = InitialCondition::Kind::SquareInclusion;
    initial.side_fraction = 0.5;
    t_final = 1.0;
  } else {
    throw InvalidArgument("unknown scenario '" + std::string(name) + "'");
  }

  const int n = overrides.n.value_or(overrides.m && !overrides.n ? d.n * *overrides.m / d.m : d.n);
  const int m = overrides.m.value_or(overrides.n && !overrides.m ? d.m * *overrides.n / d.n : d.m);
  double dr = d.dr;
  if (overrides.dr) {
    dr = *overrides.dr;
  } else if (n != d.n) {
    dr = d.dr * d.n / n;
  } else if (m != d.m) {
    dr = d.dr * d.m / m;
  }
  const BoundaryCondition bc = overrides.bc.value_or(d.bc);
  if (overrides.t_final) t_final = *overrides.t_final;

  std::optional<ParameterSchedule> schedule;
  if (layout == Layout::Uniform) {
    schedule.emplace(uniform_schedule(-2.0, 0.0, t_final));
  } else {
    const int band = std::max(1, static_cast<int>(std::lround(static_cast<double>(kBandCells) * n / kBandGrid)));
    schedule.emplace(RegionMask::horizontal_bands(band, 0),
                     layout == Layout::AcBands ? ac_banded_rows() : ch_banded_rows());
  }

  Scenario scenario{std::string(name), Grid(n, m, dr, bc, bc), model, constants, std::move(*schedule), initial,
                    t_final};
  scenario.validate();
  return scenario;
}

}  // namespace phasefield
