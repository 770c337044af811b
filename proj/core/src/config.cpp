#include "phasefield/config.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/explicit_solver.hpp"
#include "phasefield/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>

namespace phasefield {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string join_key(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!names.contains(key)) throw ConfigError(join_key(prefix, key), "unknown key");
  }
}

const json& require_object(const json& obj, const std::string& key) {
  if (!obj.is_object()) throw ConfigError(key, "expected an object");
  return obj;
}

double number_at(const json& obj, const std::string& key, const std::string& prefix) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join_key(prefix, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(join_key(prefix, key), "must be finite");
  return x;
}

std::optional<double> optional_number(const json& obj, const std::string& key, const std::string& prefix) {
  if (!obj.contains(key)) return std::nullopt;
  return number_at(obj, key, prefix);
}

std::optional<long> optional_integer(const json& obj, const std::string& key, const std::string& prefix) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(join_key(prefix, key), "expected an integer");
  return v.get<long>();
}

std::optional<std::uint64_t> optional_seed(const json& obj, const std::string& key, const std::string& prefix) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(join_key(prefix, key), "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::optional<std::string> optional_string(const json& obj, const std::string& key, const std::string& prefix) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join_key(prefix, key), "expected a string");
  return v.get<std::string>();
}

template <typename Parse>
auto parse_enum(const std::string& text, const std::string& key, Parse parse) {
  try {
    return parse(text);
  } catch (const InvalidArgument& e) {
    throw ConfigError(key, e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& text) {
  std::filesystem::path p(text);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

RegionMask parse_mask(const json& obj, const std::filesystem::path& base, std::optional<std::filesystem::path>& path) {
  const std::string prefix = "schedule.mask";
  require_object(obj, prefix);
  const std::string kind = optional_string(obj, "kind", prefix).value_or("uniform");
  if (kind == "uniform") {
    reject_unknown(obj, prefix, {"kind"});
    return RegionMask::uniform();
  }
  if (kind == "horizontal_bands") {
    reject_unknown(obj, prefix, {"kind", "band_height", "phase_offset"});
    const auto height = optional_integer(obj, "band_height", prefix);
    if (!height || *height < 1) throw ConfigError(prefix + ".band_height", "must be a positive integer");
    return RegionMask::horizontal_bands(static_cast<int>(*height),
                                        static_cast<int>(optional_integer(obj, "phase_offset", prefix).value_or(0)));
  }
  if (kind == "cell_map") {
    reject_unknown(obj, prefix, {"kind", "path"});
    const auto text = optional_string(obj, "path", prefix);
    if (!text) throw ConfigError(prefix + ".path", "cell_map needs a path");
    path = resolve(base, *text);
    if (!std::filesystem::exists(*path)) throw ConfigError(prefix + ".path", "file not found: " + path->string());
    try {
      return RegionMask::cell_map(read_index_csv(*path));
    } catch (const Error& e) {
      throw ConfigError(prefix + ".path", e.what());
    }
  }
  throw ConfigError(prefix + ".kind", "unknown mask kind '" + kind + "'");
}

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(key, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<ScheduleRow> parse_rows(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ConfigError("schedule.rows", "expected a non-empty array");
  std::vector<ScheduleRow> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string prefix = "schedule.rows[" + std::to_string(k) + "]";
    const json& row = require_object(rows[k], prefix);
    reject_unknown(row, prefix, {"t_begin", "t_end", "T", "h"});
    if (!row.contains("t_begin") || !row.contains("t_end") || !row.contains("T") || !row.contains("h")) {
      throw ConfigError(prefix, "rows need t_begin, t_end, T and h");
    }
    const auto T = number_list(row.at("T"), prefix + ".T");
    const auto h = number_list(row.at("h"), prefix + ".h");
    if (T.size() != h.size() || T.empty()) throw ConfigError(prefix, "T and h need the same non-zero length");
    ScheduleRow r{number_at(row, "t_begin", prefix), number_at(row, "t_end", prefix), {}};
    for (std::size_t i = 0; i < T.size(); ++i) r.values.push_back(RegionValues{T[i], h[i]});
    out.push_back(std::move(r));
  }
  return out;
}

InitialCondition parse_initial(const json& obj, InitialCondition base, const std::filesystem::path& dir) {
  const std::string prefix = "initial";
  require_object(obj, prefix);
  reject_unknown(obj, prefix, {"kind", "side_fraction", "inside", "outside", "amplitude", "seed", "path"});
  if (const auto kind = optional_string(obj, "kind", prefix)) {
    base.kind = parse_enum(*kind, prefix + ".kind", parse_initial_kind);
  }
  base.side_fraction = optional_number(obj, "side_fraction", prefix).value_or(base.side_fraction);
  base.inside = optional_number(obj, "inside", prefix).value_or(base.inside);
  base.outside = optional_number(obj, "outside", prefix).value_or(base.outside);
  base.amplitude = optional_number(obj, "amplitude", prefix).value_or(base.amplitude);
  base.seed = optional_seed(obj, "seed", prefix).value_or(base.seed);
  if (const auto path = optional_string(obj, "path", prefix)) base.path = resolve(dir, *path).string();

  if (base.kind == InitialCondition::Kind::SquareInclusion &&
      !(base.side_fraction > 0.0 && base.side_fraction <= 1.0)) {
    throw ConfigError(prefix + ".side_fraction", "must lie in (0, 1]");
  }
  if (base.kind == InitialCondition::Kind::UniformNoise && !(base.amplitude >= 0.0)) {
    throw ConfigError(prefix + ".amplitude", "must be >= 0");
  }
  if (base.kind == InitialCondition::Kind::FromFile) {
    if (base.path.empty()) throw ConfigError(prefix + ".path", "from_file needs a path");
    if (!std::filesystem::exists(base.path)) throw ConfigError(prefix + ".path", "file not found: " + base.path);
  }
  return base;
}

SplittingPolicy parse_splitting(const json& obj) {
  const std::string prefix = "splitting";
  require_object(obj, prefix);
  reject_unknown(obj, prefix, {"safety_factor", "margin", "xi_at_zero_T", "mode"});
  SplittingPolicy p;
  p.safety_factor = optional_number(obj, "safety_factor", prefix).value_or(p.safety_factor);
  p.margin = optional_number(obj, "margin", prefix).value_or(p.margin);
  p.xi_at_zero_T = optional_number(obj, "xi_at_zero_T", prefix).value_or(p.xi_at_zero_T);
  if (const auto mode = optional_string(obj, "mode", prefix)) {
    p.mode = parse_enum(*mode, prefix + ".mode", parse_splitting_mode);
  }
  if (!(p.safety_factor >= 1.0)) throw ConfigError(prefix + ".safety_factor", "must be >= 1");
  if (!(p.margin >= 0.0)) throw ConfigError(prefix + ".margin", "must be >= 0");
  return p;
}

RecordingSpec parse_recording(const json& obj) {
  const std::string prefix = "recording";
  require_object(obj, prefix);
  reject_unknown(obj, prefix, {"series_stride", "snapshot_times", "energy"});
  RecordingSpec r;
  r.series_stride = optional_integer(obj, "series_stride", prefix).value_or(1);
  if (r.series_stride < 1) throw ConfigError(prefix + ".series_stride", "must be >= 1");
  if (obj.contains("snapshot_times")) r.snapshot_times = number_list(obj.at("snapshot_times"), prefix + ".snapshot_times");
  if (obj.contains("energy")) {
    if (!obj.at("energy").is_boolean()) throw ConfigError(prefix + ".energy", "expected true or false");
    r.record_energy = obj.at("energy").get<bool>();
  }
  return r;
}

PerturbationOptions parse_perturbation(const json& obj, PerturbationOptions p) {
  const std::string prefix = "perturbation";
  require_object(obj, prefix);
  reject_unknown(obj, prefix, {"magnitude", "growth_threshold", "blowup_threshold", "stride"});
  p.magnitude = optional_number(obj, "magnitude", prefix).value_or(p.magnitude);
  p.growth_threshold = optional_number(obj, "growth_threshold", prefix).value_or(p.growth_threshold);
  p.blowup_threshold = optional_number(obj, "blowup_threshold", prefix).value_or(p.blowup_threshold);
  p.stride = optional_integer(obj, "stride", prefix).value_or(p.stride);
  if (!(p.magnitude >= 0.0)) throw ConfigError(prefix + ".magnitude", "must be >= 0");
  if (!(p.growth_threshold > 1.0)) throw ConfigError(prefix + ".growth_threshold", "must be > 1");
  if (!(p.blowup_threshold >= p.growth_threshold)) {
    throw ConfigError(prefix + ".blowup_threshold", "must be >= growth_threshold");
  }
  if (p.stride < 1) throw ConfigError(prefix + ".stride", "must be >= 1");
  return p;
}

}  // namespace

Scenario RunConfig::scenario() const {
  return Scenario{scenario_name.value_or("custom"), grid, model, constants, schedule, initial, t_final};
}

RunConfig parse_config(const json& document, const std::filesystem::path& base_dir) {
  if (!document.is_object()) throw ConfigError("", "config must be a JSON object");
  if (document.contains("config") && document.at("config").is_object()) {
    return parse_config(document.at("config"), base_dir);
  }
  const json& doc = document;
  reject_unknown(doc, "", {"scenario", "model", "solver", "grid", "constants", "dt", "t_final", "schedule", "initial",
                           "splitting", "recording", "perturbation", "seed", "output_dir"});

  // Base values, either from a named scenario or required keys.
  std::optional<Scenario> base;
  const auto scenario_name = optional_string(doc, "scenario", "");
  const json grid_obj = doc.contains("grid") ? require_object(doc.at("grid"), "grid") : json::object();
  reject_unknown(grid_obj, "grid", {"n", "m", "dr", "bc_x", "bc_y"});
  const auto n = optional_integer(grid_obj, "n", "grid");
  const auto m = optional_integer(grid_obj, "m", "grid");
  const auto dr = optional_number(grid_obj, "dr", "grid");
  const auto t_final = optional_number(doc, "t_final", "");
  if (n && *n < 3) throw ConfigError("grid.n", "must be >= 3");
  if (m && *m < 3) throw ConfigError("grid.m", "must be >= 3");
  if (dr && !(*dr > 0.0)) throw ConfigError("grid.dr", "must be positive");
  if (t_final && !(*t_final > 0.0)) throw ConfigError("t_final", "must be positive");

  if (scenario_name) {
    ScenarioOverrides o;
    if (n) o.n = static_cast<int>(*n);
    if (m) o.m = static_cast<int>(*m);
    o.dr = dr;
    try {
      base.emplace(build_scenario(*scenario_name, o));
    } catch (const InvalidArgument& e) {
      throw ConfigError("scenario", e.what());
    }
  } else {
    for (const char* key : {"model", "solver", "dt", "t_final"}) {
      if (!doc.contains(key)) throw ConfigError(key, "required when no scenario is named");
    }
    if (!n || !m || !dr) throw ConfigError("grid", "n, m and dr are required when no scenario is named");
  }

  const Model model = doc.contains("model")
                          ? parse_enum(optional_string(doc, "model", "").value(), "model", parse_model)
                          : base->model;
  const SolverKind solver = parse_enum(optional_string(doc, "solver", "").value_or("implicit"), "solver", parse_solver);

  auto bc_of = [&](const char* key, BoundaryCondition fallback) {
    const auto text = optional_string(grid_obj, key, "grid");
    return text ? parse_enum(*text, std::string("grid.") + key, parse_boundary_condition) : fallback;
  };
  const BoundaryCondition fallback_bc = base ? base->grid.bc_x() : BoundaryCondition::Periodic;
  const BoundaryCondition bc_x = bc_of("bc_x", fallback_bc);
  const BoundaryCondition bc_y = bc_of("bc_y", base ? base->grid.bc_y() : BoundaryCondition::Periodic);
  const Grid grid = base ? Grid(base->grid.n(), base->grid.m(), base->grid.dr(), bc_y, bc_x)
                         : Grid(static_cast<int>(*n), static_cast<int>(*m), *dr, bc_y, bc_x);

  PhysicalConstants constants = base ? base->constants : PhysicalConstants{};
  if (doc.contains("constants")) {
    const json& c = require_object(doc.at("constants"), "constants");
    reject_unknown(c, "constants", {"gamma", "mobility"});
    constants.gamma = optional_number(c, "gamma", "constants").value_or(constants.gamma);
    constants.mobility = optional_number(c, "mobility", "constants").value_or(constants.mobility);
  }
  if (!(constants.gamma > 0.0)) throw ConfigError("constants.gamma", "must be positive");
  if (!(constants.mobility > 0.0)) throw ConfigError("constants.mobility", "must be positive");

  double dt = 0.0;
  if (doc.contains("dt")) {
    dt = number_at(doc, "dt", "");
  } else {
    // Scenario without dt: half the explicit limit.
    dt = 0.5 * explicit_stability_limit(model, constants.gamma, grid.dr());
  }
  if (!(dt > 0.0)) throw ConfigError("dt", "must be positive");
  const double final_time = t_final ? *t_final : base->t_final;

  std::optional<std::filesystem::path> cell_map_path;
  std::optional<ParameterSchedule> schedule;
  if (doc.contains("schedule")) {
    const json& s = require_object(doc.at("schedule"), "schedule");
    reject_unknown(s, "schedule", {"mask", "rows"});
    RegionMask mask = s.contains("mask") ? parse_mask(s.at("mask"), base_dir, cell_map_path) : RegionMask::uniform();
    if (!s.contains("rows")) throw ConfigError("schedule.rows", "required");
    try {
      schedule.emplace(std::move(mask), parse_rows(s.at("rows")));
    } catch (const InvalidArgument& e) {
      throw ConfigError("schedule", e.what());
    }
  } else if (base && base->schedule.rows().size() == 1 &&
             base->schedule.mask().kind() == RegionMask::Kind::Uniform) {
    // Constant parameters stretch to whatever horizon the run asks for.
    const RegionValues v = base->schedule.rows().front().values.front();
    schedule.emplace(uniform_schedule(v.T, v.h, std::max(final_time, base->schedule.t_end())));
  } else if (base) {
    schedule.emplace(base->schedule);
  } else {
    schedule.emplace(uniform_schedule(-2.0, 0.0, final_time));
  }
  if (!schedule->covers(final_time)) {
    throw ConfigError("schedule", "rows end at t = " + format_double(schedule->t_end()) +
                                      " but t_final = " + format_double(final_time));
  }
  try {
    schedule->mask().check_grid(grid);
  } catch (const DimensionError& e) {
    throw ConfigError("schedule.mask", e.what());
  }

  InitialCondition initial = base ? base->initial : InitialCondition{};
  if (doc.contains("initial")) initial = parse_initial(doc.at("initial"), initial, base_dir);

  const std::uint64_t seed = optional_seed(doc, "seed", "").value_or(PerturbationOptions{}.seed);
  PerturbationOptions perturbation;
  perturbation.seed = seed;
  if (doc.contains("perturbation")) perturbation = parse_perturbation(doc.at("perturbation"), perturbation);

  const std::filesystem::path output_dir = resolve(base_dir, optional_string(doc, "output_dir", "").value_or("run"));

  if (solver == SolverKind::Implicit &&
      (grid.bc_x() == BoundaryCondition::Symmetric || grid.bc_y() == BoundaryCondition::Symmetric)) {
    throw ConfigError("grid", "the implicit solver supports periodic and neumann boundaries only");
  }

  return RunConfig{scenario_name,
                   model,
                   solver,
                   grid,
                   constants,
                   dt,
                   final_time,
                   std::move(*schedule),
                   cell_map_path,
                   initial,
                   doc.contains("splitting") ? parse_splitting(doc.at("splitting")) : SplittingPolicy{},
                   doc.contains("recording") ? parse_recording(doc.at("recording")) : RecordingSpec{},
                   perturbation,
                   seed,
                   output_dir};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "cannot parse " + path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  if (c.scenario_name) j["scenario"] = *c.scenario_name;
  j["model"] = to_string(c.model);
  j["solver"] = to_string(c.solver);
  j["grid"] = {{"n", c.grid.n()},
               {"m", c.grid.m()},
               {"dr", c.grid.dr()},
               {"bc_x", to_string(c.grid.bc_x())},
               {"bc_y", to_string(c.grid.bc_y())}};
  j["constants"] = {{"gamma", c.constants.gamma}, {"mobility", c.constants.mobility}};
  j["dt"] = c.dt;
  j["t_final"] = c.t_final;

  ordered_json mask;
  switch (c.schedule.mask().kind()) {
    case RegionMask::Kind::Uniform:
      mask["kind"] = "uniform";
      break;
    case RegionMask::Kind::HorizontalBands:
      mask["kind"] = "horizontal_bands";
      mask["band_height"] = c.schedule.mask().band_height();
      mask["phase_offset"] = c.schedule.mask().phase_offset();
      break;
    case RegionMask::Kind::CellMap:
      mask["kind"] = "cell_map";
      mask["path"] = c.cell_map_path ? c.cell_map_path->string() : std::string();
      break;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& row : c.schedule.rows()) {
    ordered_json r;
    r["t_begin"] = row.t_begin;
    r["t_end"] = row.t_end;
    r["T"] = ordered_json::array();
    r["h"] = ordered_json::array();
    for (const auto& v : row.values) {
      r["T"].push_back(v.T);
      r["h"].push_back(v.h);
    }
    rows.push_back(r);
  }
  j["schedule"] = {{"mask", mask}, {"rows", rows}};

  ordered_json init;
  init["kind"] = to_string(c.initial.kind);
  init["side_fraction"] = c.initial.side_fraction;
  init["inside"] = c.initial.inside;
  init["outside"] = c.initial.outside;
  init["amplitude"] = c.initial.amplitude;
  init["seed"] = c.initial.seed;
  if (!c.initial.path.empty()) init["path"] = c.initial.path;
  j["initial"] = init;

  j["splitting"] = {{"safety_factor", c.splitting.safety_factor},
                    {"margin", c.splitting.margin},
                    {"xi_at_zero_T", c.splitting.xi_at_zero_T},
                    {"mode", to_string(c.splitting.mode)}};
  j["recording"] = {{"series_stride", c.recording.series_stride},
                    {"snapshot_times", c.recording.snapshot_times},
                    {"energy", c.recording.record_energy}};
  j["perturbation"] = {{"magnitude", c.perturbation.magnitude},
                       {"growth_threshold", c.perturbation.growth_threshold},
                       {"blowup_threshold", c.perturbation.blowup_threshold},
                       {"stride", c.perturbation.stride}};
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir.string();
  return j;
}

RunSummary summarize(const RunResult& result) {
  RunSummary s;
  s.steps_taken = result.steps_taken;
  s.final_time = result.series.empty() ? 0.0 : result.series.back().time;
  s.diverged_at = result.diverged_at;
  const auto energies = energies_of(result.series);
  s.gradient_stable = !result.diverged_at && !energies.empty() && gradient_stability_check(energies);
  s.mass_drift = result.series.empty() ? 0.0 : conservation_check(masses_of(result.series));
  return s;
}

void prepare_output_dir(const std::filesystem::path& dir, bool force) {
  namespace fs = std::filesystem;
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) throw Error(dir.string() + " exists and is not a directory");
    if (!fs::is_empty(dir)) {
      if (!force) throw Error(dir.string() + " already holds a run; pass --force to replace it");
      fs::remove_all(dir);
    }
  }
  fs::create_directories(dir);
}

std::vector<std::filesystem::path> write_outputs(const RunResult& result, const RunConfig& config, bool force) {
  prepare_output_dir(config.output_dir, force);
  std::vector<std::filesystem::path> files;

  const auto series = config.output_dir / "series.csv";
  write_series_csv(series, result.series);
  files.push_back(series);

  ordered_json snapshots = ordered_json::array();
  for (const auto& snap : result.snapshots) {
    for (const auto& p : write_snapshot(config.output_dir, snap)) files.push_back(p);
    snapshots.push_back({{"time", snap.time}, {"step", snap.step}, {"file", snapshot_file_name(snap.time)}});
  }

  const RunSummary s = summarize(result);
  ordered_json manifest;
  manifest["config"] = to_json(config);
  manifest["result"] = {{"steps_taken", s.steps_taken},
                        {"final_time", s.final_time},
                        {"diverged_at", s.diverged_at ? ordered_json(*s.diverged_at) : ordered_json(nullptr)},
                        {"gradient_stable", s.gradient_stable},
                        {"mass_drift", s.mass_drift},
                        {"snapshots", snapshots}};
  const auto manifest_path = config.output_dir / "manifest.json";
  std::ofstream out(manifest_path);
  if (!out) throw Error("cannot write " + manifest_path.string());
  out << manifest.dump(2) << '\n';
  files.push_back(manifest_path);
  return files;
}

}  // namespace phasefield
