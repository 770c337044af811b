#include "phasefield/io.hpp"

#include "phasefield/errors.hpp"

#include <nlohmann/json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace phasefield {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

std::vector<std::vector<std::string>> read_csv_cells(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!rows.empty() && cells.size() != rows.front().size()) {
      throw Error(path.string() + ": line " + std::to_string(rows.size() + 1) + " has " +
                  std::to_string(cells.size()) + " values, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw Error(path.string() + " is empty");
  return rows;
}

double parse_double(const std::string& text, const std::filesystem::path& path) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  while (end && (*end == ' ' || *end == '\t')) ++end;
  if (end == text.c_str() || (end && *end != '\0') || errno == ERANGE) {
    throw Error(path.string() + ": cannot parse '" + text + "' as a number");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& values) {
  std::ofstream out = open_for_write(path);
  std::string line;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    line.clear();
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j > 0) line += ',';
      line += format_double(values(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error("failed writing " + path.string());
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  const auto cells = read_csv_cells(path);
  Matrix out(static_cast<Eigen::Index>(cells.size()), static_cast<Eigen::Index>(cells.front().size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < cells[i].size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_double(cells[i][j], path);
    }
  }
  return out;
}

IndexMatrix read_index_csv(const std::filesystem::path& path) {
  const auto cells = read_csv_cells(path);
  IndexMatrix out(static_cast<Eigen::Index>(cells.size()), static_cast<Eigen::Index>(cells.front().size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < cells[i].size(); ++j) {
      const double v = parse_double(cells[i][j], path);
      if (v != static_cast<double>(static_cast<int>(v))) {
        throw Error(path.string() + ": region id '" + cells[i][j] + "' is not an integer");
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<int>(v);
    }
  }
  return out;
}

std::string snapshot_file_name(double time) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "snapshot_t%.9f.csv", time);
  return buf;
}

std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir, const Snapshot& snapshot) {
  const std::filesystem::path csv = dir / snapshot_file_name(snapshot.time);
  std::filesystem::path meta = csv;
  meta.replace_extension(".json");
  write_matrix_csv(csv, snapshot.field.values());

  const Grid& g = snapshot.field.grid();
  nlohmann::ordered_json j;
  j["n"] = g.n();
  j["m"] = g.m();
  j["dr"] = g.dr();
  j["bc_x"] = to_string(g.bc_x());
  j["bc_y"] = to_string(g.bc_y());
  j["time"] = snapshot.time;
  j["step"] = snapshot.step;
  std::ofstream out = open_for_write(meta);
  out << j.dump(2) << '\n';
  return {csv, meta};
}

void write_series_csv(const std::filesystem::path& path, const std::vector<SeriesRecord>& series) {
  std::ofstream out = open_for_write(path);
  out << "step,time,free_energy,mass,l2_perturbation,max_abs_phi\n";
  for (const auto& rec : series) {
    out << rec.step << ',' << format_double(rec.time) << ',' << format_double(rec.free_energy) << ','
        << format_double(rec.mass) << ',' << (rec.l2_perturbation ? format_double(*rec.l2_perturbation) : "")
        << ',' << format_double(rec.max_abs_phi) << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace phasefield
