#pragma once

#include "phasefield/grid.hpp"

#include <vector>

namespace phasefield {

using IndexMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Assigns every cell a region id.
class RegionMask {
 public:
  enum class Kind { Uniform, HorizontalBands, CellMap };

  static RegionMask uniform() { return RegionMask(Kind::Uniform); }

  /// Alternating bands of rows: region ((i + offset) / height) mod 2.
  static RegionMask horizontal_bands(int band_height_cells, int phase_offset_cells = 0);

  /// Explicit per-cell ids (non-negative).
  static RegionMask cell_map(IndexMatrix ids);

  Kind kind() const noexcept { return kind_; }
  int band_height() const noexcept { return band_height_; }
  int phase_offset() const noexcept { return phase_offset_; }
  const IndexMatrix& ids() const noexcept { return ids_; }

  int region_at(int i, int j) const;

  /// Number of distinct ids the mask can produce (1 + largest id).
  int region_count() const noexcept;

  /// Throws DimensionError if a CellMap does not match the grid.
  void check_grid(const Grid& grid) const;

 private:
  explicit RegionMask(Kind kind) : kind_(kind) {}

  Kind kind_;
  int band_height_ = 0;
  int phase_offset_ = 0;
  IndexMatrix ids_;
};

struct RegionValues {
  double T = 0.0;
  double h = 0.0;

  friend bool operator==(const RegionValues&, const RegionValues&) = default;
};

/// Parameters held constant over (t_begin, t_end]; `values[r]` belongs to
/// region id r.
struct ScheduleRow {
  double t_begin = 0.0;
  double t_end = 0.0;
  std::vector<RegionValues> values;
};

/// Piecewise-constant-in-time, region-masked T(x, t) and h(x, t).
///
/// Rows tile [0, t_end] contiguously. A time t belongs to the row with
/// t_begin < t <= t_end; the first row is also closed at 0.
class ParameterSchedule {
 public:
  ParameterSchedule(RegionMask mask, std::vector<ScheduleRow> rows);

  const RegionMask& mask() const noexcept { return mask_; }
  const std::vector<ScheduleRow>& rows() const noexcept { return rows_; }
  double t_end() const noexcept { return rows_.back().t_end; }

  /// True when the schedule covers [0, t] (t within a relative 1e-12 of
  /// the last row end counts as covered).
  bool covers(double t) const noexcept;

  const ScheduleRow& row_at(double t) const;

  /// Index of the active row, for change detection.
  std::size_t row_index(double t) const;

 private:
  RegionMask mask_;
  std::vector<ScheduleRow> rows_;
};

struct ParameterFields {
  Field T;
  Field h;
};

/// Per-cell T and h at time t. Throws OutOfRange outside the schedule.
ParameterFields evaluate_schedule(const ParameterSchedule& schedule, double t, const Grid& grid);

/// Single row over [0, t_final] on a uniform mask.
ParameterSchedule uniform_schedule(double T, double h, double t_final);

}  // namespace phasefield
