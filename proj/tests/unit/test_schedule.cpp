#include "support.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/scenarios.hpp"
#include "phasefield/schedule.hpp"

#include <doctest.h>

using namespace phasefield;

namespace {

ParameterSchedule ac_schedule() { return ParameterSchedule(RegionMask::horizontal_bands(10), ac_banded_rows()); }
ParameterSchedule ch_schedule() { return ParameterSchedule(RegionMask::horizontal_bands(10), ch_banded_rows()); }

const Grid kBanded = Grid::square(50, 0.02, BoundaryCondition::Periodic);

}  // namespace

TEST_CASE("horizontal bands alternate every band_height rows") {
  const RegionMask mask = RegionMask::horizontal_bands(10);
  CHECK(mask.region_at(0, 0) == 0);
  CHECK(mask.region_at(9, 40) == 0);
  CHECK(mask.region_at(10, 0) == 1);
  CHECK(mask.region_at(25, 3) == 0);
  CHECK(mask.region_at(49, 0) == 0);
  CHECK(mask.region_count() == 2);

  const RegionMask shifted = RegionMask::horizontal_bands(4, 2);
  CHECK(shifted.region_at(0, 0) == 0);
  CHECK(shifted.region_at(2, 0) == 1);
  const RegionMask negative = RegionMask::horizontal_bands(4, -1);
  CHECK(negative.region_at(0, 0) == 1);
  CHECK(negative.region_at(1, 0) == 0);
  CHECK_THROWS_AS(RegionMask::horizontal_bands(0), InvalidArgument);
}

TEST_CASE("cell maps are validated against the grid") {
  IndexMatrix ids = IndexMatrix::Zero(3, 4);
  ids(1, 2) = 2;
  const RegionMask mask = RegionMask::cell_map(ids);
  CHECK(mask.region_at(1, 2) == 2);
  CHECK(mask.region_count() == 3);
  CHECK_NOTHROW(mask.check_grid(Grid(3, 4, 1.0, BoundaryCondition::Periodic, BoundaryCondition::Periodic)));
  CHECK_THROWS_AS(mask.check_grid(Grid::square(4, 1.0, BoundaryCondition::Periodic)), DimensionError);
  ids(0, 0) = -1;
  CHECK_THROWS_AS(RegionMask::cell_map(ids), InvalidArgument);
}

TEST_CASE("allen-cahn banded values inside the first period") {
  const auto p = evaluate_schedule(ac_schedule(), 0.03, kBanded);
  // Region 0 (rows 0-9) carries (T+, h+), region 1 (rows 10-19) (T-, h-).
  CHECK(p.T(0, 0) == 0.49);
  CHECK(p.h(0, 0) == -11.76);
  CHECK(p.T(15, 7) == -4.13);
  CHECK(p.h(15, 7) == 3.24);
}

TEST_CASE("interval ends are closed on the right") {
  const auto at_end = evaluate_schedule(ac_schedule(), 0.05, kBanded);
  CHECK(at_end.T(0, 0) == 0.49);
  const auto after = evaluate_schedule(ac_schedule(), 0.0500001, kBanded);
  CHECK(after.T(0, 0) == 4.18);
  const auto start = evaluate_schedule(ac_schedule(), 0.0, kBanded);
  CHECK(start.T(0, 0) == 0.49);
  CHECK(ac_schedule().row_index(0.2) == 3);
}

TEST_CASE("cahn-hilliard banded schedule, third period") {
  const auto p = evaluate_schedule(ch_schedule(), 0.12, kBanded);
  CHECK(p.T(0, 0) == 9.73);
  CHECK(p.h(0, 0) == -23.46);
  CHECK(p.T(10, 0) == 12.65);
  CHECK(p.h(10, 0) == 29.30);
}

TEST_CASE("uniform schedule covers [0, t_final] only") {
  const ParameterSchedule s = uniform_schedule(-2.0, 0.0, 1.0);
  const Grid g = Grid::square(4, 0.25, BoundaryCondition::Neumann);
  for (double t : {0.0, 0.4, 1.0}) {
    const auto p = evaluate_schedule(s, t, g);
    CHECK(p.T.values().maxCoeff() == -2.0);
    CHECK(p.T.values().minCoeff() == -2.0);
    CHECK(p.h.values().cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(evaluate_schedule(s, 1.5, g), OutOfRange);
  CHECK_THROWS_AS(evaluate_schedule(s, -0.1, g), OutOfRange);
  CHECK(s.covers(1.0));
  CHECK(s.covers(1.0 + 1e-14));
  CHECK_FALSE(s.covers(1.1));
  CHECK_THROWS_AS(uniform_schedule(-2.0, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("schedule rows must tile time contiguously") {
  const auto row = [](double a, double b) { return ScheduleRow{a, b, {RegionValues{-1.0, 0.0}}}; };
  CHECK_THROWS_AS(ParameterSchedule(RegionMask::uniform(), {}), InvalidArgument);
  CHECK_THROWS_AS(ParameterSchedule(RegionMask::uniform(), {row(0.1, 0.2)}), InvalidArgument);
  CHECK_THROWS_AS(ParameterSchedule(RegionMask::uniform(), {row(0.0, 0.1), row(0.15, 0.2)}), InvalidArgument);
  CHECK_THROWS_AS(ParameterSchedule(RegionMask::uniform(), {row(0.0, 0.1), row(0.05, 0.2)}), InvalidArgument);
  CHECK_THROWS_AS(ParameterSchedule(RegionMask::uniform(), {row(0.0, 0.0)}), InvalidArgument);
  CHECK_NOTHROW(ParameterSchedule(RegionMask::uniform(), {row(0.0, 0.1), row(0.1, 0.2)}));
  // Banded masks need two regions per row.
  CHECK_THROWS_AS(ParameterSchedule(RegionMask::horizontal_bands(2), {row(0.0, 0.1)}), InvalidArgument);
}

TEST_CASE("cell map schedule assigns per-cell values") {
  IndexMatrix ids(3, 3);
  ids << 0, 1, 2, 2, 1, 0, 0, 0, 0;
  const ParameterSchedule s(RegionMask::cell_map(ids),
                            {ScheduleRow{0.0, 1.0, {{-1.0, 0.1}, {-2.0, 0.2}, {-3.0, 0.3}}}});
  const auto p = evaluate_schedule(s, 0.5, Grid::square(3, 1.0, BoundaryCondition::Periodic));
  CHECK(p.T(0, 2) == -3.0);
  CHECK(p.h(1, 1) == 0.2);
  CHECK(p.T(2, 2) == -1.0);
  CHECK_THROWS_AS(evaluate_schedule(s, 0.5, Grid::square(4, 1.0, BoundaryCondition::Periodic)), DimensionError);
}
