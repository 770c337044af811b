#include "phasefield/schedule.hpp"

#include "phasefield/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phasefield {

namespace {

double time_tolerance(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

int floor_mod(int a, int b) {
  const int r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace

RegionMask RegionMask::horizontal_bands(int band_height_cells, int phase_offset_cells) {
  if (band_height_cells < 1) throw InvalidArgument("band height must be at least one cell");
  RegionMask mask(Kind::HorizontalBands);
  mask.band_height_ = band_height_cells;
  mask.phase_offset_ = phase_offset_cells;
  return mask;
}

RegionMask RegionMask::cell_map(IndexMatrix ids) {
  if (ids.size() == 0) throw InvalidArgument("cell map is empty");
  if (ids.minCoeff() < 0) throw InvalidArgument("cell map region ids must be non-negative");
  RegionMask mask(Kind::CellMap);
  mask.ids_ = std::move(ids);
  return mask;
}

int RegionMask::region_at(int i, int j) const {
  switch (kind_) {
    case Kind::Uniform:
      return 0;
    case Kind::HorizontalBands: {
      const int shifted = i + phase_offset_;
      const int band = shifted >= 0 ? shifted / band_height_ : -((-shifted + band_height_ - 1) / band_height_);
      return floor_mod(band, 2);
    }
    case Kind::CellMap:
      return ids_(i, j);
  }
  return 0;
}

int RegionMask::region_count() const noexcept {
  switch (kind_) {
    case Kind::Uniform:
      return 1;
    case Kind::HorizontalBands:
      return 2;
    case Kind::CellMap:
      return ids_.maxCoeff() + 1;
  }
  return 1;
}

void RegionMask::check_grid(const Grid& grid) const {
  if (kind_ == Kind::CellMap && (ids_.rows() != grid.n() || ids_.cols() != grid.m())) {
    throw DimensionError("cell map is " + std::to_string(ids_.rows()) + "x" + std::to_string(ids_.cols()) +
                         " but grid is " + std::to_string(grid.n()) + "x" + std::to_string(grid.m()));
  }
}

ParameterSchedule::ParameterSchedule(RegionMask mask, std::vector<ScheduleRow> rows)
    : mask_(std::move(mask)), rows_(std::move(rows)) {
  if (rows_.empty()) throw InvalidArgument("schedule needs at least one row");
  if (rows_.front().t_begin != 0.0) throw InvalidArgument("schedule must start at t = 0");
  const auto regions = static_cast<std::size_t>(mask_.region_count());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const ScheduleRow& row = rows_[k];
    if (!(row.t_end > row.t_begin)) {
      throw InvalidArgument("schedule row " + std::to_string(k) + " has t_end <= t_begin");
    }
    if (k > 0 && std::abs(row.t_begin - rows_[k - 1].t_end) > time_tolerance(row.t_begin)) {
      throw InvalidArgument("schedule row " + std::to_string(k) + " does not start where the previous row ends");
    }
    if (row.values.size() < regions) {
      throw InvalidArgument("schedule row " + std::to_string(k) + " defines " + std::to_string(row.values.size()) +
                            " regions but the mask uses " + std::to_string(regions));
    }
  }
}

bool ParameterSchedule::covers(double t) const noexcept {
  return t >= 0.0 && t <= t_end() + time_tolerance(t_end());
}

std::size_t ParameterSchedule::row_index(double t) const {
  if (!covers(t)) {
    throw OutOfRange("time " + std::to_string(t) + " is outside the schedule [0, " + std::to_string(t_end()) + "]");
  }
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (t <= rows_[k].t_end + time_tolerance(rows_[k].t_end)) return k;
  }
  return rows_.size() - 1;
}

const ScheduleRow& ParameterSchedule::row_at(double t) const { return rows_[row_index(t)]; }

ParameterFields evaluate_schedule(const ParameterSchedule& schedule, double t, const Grid& grid) {
  schedule.mask().check_grid(grid);
  const ScheduleRow& row = schedule.row_at(t);
  Matrix T(grid.n(), grid.m());
  Matrix h(grid.n(), grid.m());
  for (int i = 0; i < grid.n(); ++i) {
    for (int j = 0; j < grid.m(); ++j) {
      const RegionValues& v = row.values[static_cast<std::size_t>(schedule.mask().region_at(i, j))];
      T(i, j) = v.T;
      h(i, j) = v.h;
    }
  }
  return {Field(grid, std::move(T)), Field(grid, std::move(h))};
}

ParameterSchedule uniform_schedule(double T, double h, double t_final) {
  if (!(t_final > 0.0)) throw InvalidArgument("uniform schedule needs t_final > 0");
  return ParameterSchedule(RegionMask::uniform(), {ScheduleRow{0.0, t_final, {RegionValues{T, h}}}});
}

}  // namespace phasefield
