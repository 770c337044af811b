#include "cli.hpp"

#include "phasefield/config.hpp"
#include "phasefield/errors.hpp"
#include "phasefield/explicit_solver.hpp"
#include "phasefield/io.hpp"
#include "phasefield/scaling.hpp"
#include "phasefield/scenarios.hpp"
#include "phasefield/splitting.hpp"
#include "phasefield/stability.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>

namespace pfsolve {

namespace pf = phasefield;

namespace {

std::string fixed(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

int run_command(const std::string& config_path, bool force, std::ostream& out) {
  const pf::RunConfig config = pf::load_config(config_path);
  const pf::RunResult result =
      pf::run_simulation(config.scenario(), config.solver, config.dt, config.splitting, config.recording);
  const auto files = pf::write_outputs(result, config, force);
  const pf::RunSummary summary = pf::summarize(result);

  out << "steps: " << summary.steps_taken << "\n"
      << "final time: " << pf::format_double(summary.final_time) << "\n"
      << "gradient stable: " << (summary.gradient_stable ? "yes" : "no") << "\n"
      << "mass drift: " << pf::format_double(summary.mass_drift) << "\n"
      << "wrote " << files.size() << " files to " << config.output_dir.string() << "\n";
  if (summary.diverged_at) {
    out << "diverged at step " << *summary.diverged_at << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int stability_command(const std::string& config_path, const std::vector<double>& dts, const std::string& csv_path,
                      std::ostream& out, std::ostream& err) {
  for (double dt : dts) {
    if (!(dt > 0.0)) {
      err << "--dt-list: every dt must be positive\n";
      return kExitUsage;
    }
  }
  const pf::RunConfig config = pf::load_config(config_path);
  const pf::Scenario scenario = config.scenario();

  std::optional<std::ofstream> csv;
  if (!csv_path.empty()) {
    csv.emplace(csv_path);
    if (!*csv) throw pf::Error("cannot open " + csv_path + " for writing");
    *csv << "dt,verdict,gradient_stable,max_norm_ratio,mass_drift,steps_taken,diverged_at\n";
  }

  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %-9s %-9s %-12s %-12s %-8s %s\n", "dt", "verdict", "monotone",
                "max_ratio", "mass_drift", "steps", "diverged_at");
  out << line;
  for (double dt : dts) {
    const pf::PerturbationReport r =
        pf::perturbation_stability_test(scenario, config.solver, dt, config.splitting, config.perturbation);
    const std::string diverged = r.diverged_at ? std::to_string(*r.diverged_at) : "-";
    std::snprintf(line, sizeof(line), "%-14.6g %-9s %-9s %-12.4e %-12.4e %-8ld %s\n", dt,
                  std::string(pf::to_string(r.verdict)).c_str(), r.gradient_stable ? "yes" : "no", r.max_norm_ratio,
                  r.mass_drift, r.steps_taken, diverged.c_str());
    out << line;
    if (csv) {
      *csv << pf::format_double(dt) << ',' << pf::to_string(r.verdict) << ',' << (r.gradient_stable ? 1 : 0) << ','
           << pf::format_double(r.max_norm_ratio) << ',' << pf::format_double(r.mass_drift) << ',' << r.steps_taken
           << ',' << (r.diverged_at ? std::to_string(*r.diverged_at) : std::string()) << '\n';
    }
  }
  return kExitOk;
}

int bench_command(const std::string& model_text, const std::string& solver_text, const std::vector<int>& sizes,
                  const pf::ScalingOptions& options, std::ostream& out, std::ostream& err) {
  pf::Model model;
  pf::SolverKind solver;
  try {
    model = pf::parse_model(model_text);
    solver = pf::parse_solver(solver_text);
  } catch (const pf::InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  for (int n : sizes) {
    if (n < 3) {
      err << "--sizes: every size must be at least 3\n";
      return kExitUsage;
    }
  }
  const pf::ScalingResult result = pf::scaling_benchmark(model, solver, sizes, options);
  char line[128];
  std::snprintf(line, sizeof(line), "%-8s %-10s %s\n", "N", "DoF", "seconds_per_step");
  out << line;
  for (const auto& p : result.table) {
    std::snprintf(line, sizeof(line), "%-8d %-10ld %.6e\n", p.size, p.dof, p.seconds_per_step);
    out << line;
  }
  if (result.exponent) {
    out << "exponent: " << fixed("%.3f", *result.exponent) << "\n";
  } else {
    out << "exponent: undefined (" << result.fit_error << ")\n";
  }
  return kExitOk;
}

int limits_command(const std::string& config_path, std::optional<double> phi_max_override, std::ostream& out) {
  const pf::RunConfig config = pf::load_config(config_path);
  const double limit = pf::explicit_stability_limit(config.model, config.constants.gamma, config.grid.dr());
  const double phi_max = phi_max_override
                             ? *phi_max_override
                             : pf::phi_max_estimate(pf::make_initial_field(config.initial, config.grid),
                                                    config.splitting);

  out << "model: " << pf::to_string(config.model) << "  gamma: " << pf::format_double(config.constants.gamma)
      << "  dr: " << pf::format_double(config.grid.dr()) << "\n";
  out << "explicit dt limit (dt_cri): " << fixed("%.6g", limit) << "\n";
  out << "configured dt: " << fixed("%.6g", config.dt) << " (" << fixed("%.4g", config.dt / limit)
      << " x dt_cri)\n";
  out << "phi_max: " << fixed("%.6g", phi_max) << (phi_max_override ? "" : " (initial field)") << "\n";

  char line[160];
  std::snprintf(line, sizeof(line), "%-6s %-22s %-7s %-11s %-11s %s\n", "row", "interval", "region", "T", "h",
                "xi_cri");
  out << line;
  const auto& rows = config.schedule.rows();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    char interval[64];
    std::snprintf(interval, sizeof(interval), "(%.6g, %.6g]", rows[k].t_begin, rows[k].t_end);
    for (std::size_t r = 0; r < rows[k].values.size(); ++r) {
      const auto& v = rows[k].values[r];
      const auto crit = pf::xi_critical(v.T, phi_max);
      std::string bound = "any (T = 0)";
      if (crit) {
        bound = (crit->direction == pf::SplitDirection::AtLeast ? "xi >= " : "xi <= ") + fixed("%.6g", crit->xi);
      }
      std::snprintf(line, sizeof(line), "%-6zu %-22s %-7zu %-11.6g %-11.6g %s\n", k, interval, r, v.T, v.h,
                    bound.c_str());
      out << line;
    }
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-field solver for Allen-Cahn and Cahn-Hilliard dynamics", "pfsolve"};
  app.require_subcommand(1);

  std::string config_path;
  bool force = false;
  auto* run = app.add_subcommand("run", "Run one simulation and write its outputs");
  run->add_option("--config", config_path, "Run configuration (JSON)")->required();
  run->add_flag("--force", force, "Replace an existing output directory");

  std::vector<double> dts;
  std::string csv_path;
  auto* stability = app.add_subcommand("stability", "Perturbation and energy verdicts for a list of dt values");
  stability->add_option("--config", config_path, "Run configuration (JSON)")->required();
  stability->add_option("--dt-list", dts, "Comma-separated time steps")->required()->delimiter(',');
  stability->add_option("--csv", csv_path, "Also write the table as CSV");

  std::string model_text;
  std::string solver_text;
  std::vector<int> sizes;
  pf::ScalingOptions scaling;
  auto* bench = app.add_subcommand("bench", "Per-step wall time against grid size");
  bench->add_option("--model", model_text, "ac or ch")->required();
  bench->add_option("--solver", solver_text, "explicit or implicit")->required();
  bench->add_option("--sizes", sizes, "Comma-separated grid sizes N (N x N)")->required()->delimiter(',');
  bench->add_option("--steps", scaling.steps_per_size, "Steps timed per repeat")->check(CLI::PositiveNumber);
  bench->add_option("--repeats", scaling.repeats, "Repeats per size (median reported)")->check(CLI::PositiveNumber);

  std::optional<double> phi_max;
  auto* limits = app.add_subcommand("limits", "Explicit dt limit and critical splitting weights");
  limits->add_option("--config", config_path, "Run configuration (JSON)")->required();
  limits->add_option("--phi-max", phi_max, "Override the phi_max estimate")->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (e.get_exit_code() != 0) err << app.help();
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return run_command(config_path, force, out);
    if (stability->parsed()) return stability_command(config_path, dts, csv_path, out, err);
    if (bench->parsed()) return bench_command(model_text, solver_text, sizes, scaling, out, err);
    if (limits->parsed()) return limits_command(config_path, phi_max, out);
  } catch (const pf::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace pfsolve
