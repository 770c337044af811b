#pragma once

#include "phasefield/grid.hpp"
#include "phasefield/schedule.hpp"
#include "phasefield/simulation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace phasefield {

/// Shortest-safe decimal with 17 significant digits; re-parses to the same
/// double.
std::string format_double(double value);

/// n lines of m comma-separated values, row-major.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& values);
Matrix read_matrix_csv(const std::filesystem::path& path);

/// Integer region ids in the same layout.
IndexMatrix read_index_csv(const std::filesystem::path& path);

/// Snapshot file name for a time, e.g. snapshot_t0.050000000.csv.
std::string snapshot_file_name(double time);

/// Writes `<stem>.csv` with the values and `<stem>.json` with n, m, dr,
/// bc_x, bc_y, time and step. Returns both paths.
std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir, const Snapshot& snapshot);

/// Header step,time,free_energy,mass,l2_perturbation,max_abs_phi; the
/// l2_perturbation column is empty when absent.
void write_series_csv(const std::filesystem::path& path, const std::vector<SeriesRecord>& series);

}  // namespace phasefield
