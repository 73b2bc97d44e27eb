// Command-line front end: simulate | bands | calibrate | check.

#include "cli_config.hpp"

#include "ose/checks.hpp"
#include "ose/harness.hpp"
#include "ose/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace fs = std::filesystem;
using namespace ose;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Flags
{
  std::string config;
  cli::Settings settings;
};

// Registers a flag that, when given, writes its value into `settings[key]`.
void add_setting(CLI::App& app, Flags& flags, const std::string& name,
                 const std::string& key, const std::string& help)
{
  app.add_option_function<std::string>(
    name, [&flags, key](const std::string& v) { flags.settings[key] = v; }, help);
}

void add_experiment_flags(CLI::App& app, Flags& flags)
{
  app.add_option("--config", flags.config, "INI config file ([section] key = value)")
    ->check(CLI::ExistingFile);
  add_setting(app, flags, "--model", "experiment.model", "density | regression");
  add_setting(app, flags, "--target", "experiment.target", "f1 | f2 (density also: uniform)");
  add_setting(app, flags, "--case", "experiment.case", "dependence case 1 | 2 | 3");
  add_setting(app, flags, "--n", "experiment.n", "sample size");
  add_setting(app, flags, "--reps", "experiment.reps", "Monte Carlo replications");
  add_setting(app, flags, "--seed", "experiment.seed", "master seed");
  add_setting(app, flags, "--workers", "experiment.workers", "worker threads");
  add_setting(app, flags, "--selectors", "experiment.selectors", "comma list of oracle,gl,ms,cv");
  add_setting(app, flags, "--max-dim", "experiment.max_dim", "largest dimension M (0: min(n,100))");
  add_setting(app, flags, "--grid", "experiment.grid", "evaluation grid size (odd)");
  add_setting(app, flags, "--sigma", "experiment.sigma", "regression noise level");
  add_setting(app, flags, "--c-gl", "penalty.c_gl", "GL penalty constant");
  add_setting(app, flags, "--c-ms", "penalty.c_ms", "MS penalty constant");
  add_setting(app, flags, "--penalty-scheme", "penalty.scheme", "calibrated | theorem");
  add_setting(app, flags, "--out", "output.dir", "output directory");
}

cli::Settings resolve(const Flags& flags)
{
  cli::Settings s;
  if (!flags.config.empty()) {
    s = cli::read_config_file(flags.config);
  }
  cli::merge(s, flags.settings);
  return s;
}

nlohmann::json config_json(const ExperimentConfig& cfg)
{
  nlohmann::json sel = nlohmann::json::array();
  for (const auto s : cfg.selectors) {
    sel.push_back(to_string(s));
  }
  return {
    { "model", to_string(cfg.model) },
    { "target", cfg.target },
    { "case", static_cast<int>(cfg.dependence) },
    { "n", cfg.n },
    { "reps", cfg.reps },
    { "seed", cfg.seed },
    { "workers", cfg.workers },
    { "selectors", sel },
    { "max_dim", cfg.resolved_max_dim() },
    { "grid", cfg.grid_nodes },
    { "sigma", cfg.noise_sigma },
    { "c_gl", cfg.gl_penalty.constant },
    { "gl_uses_sigma_hat", cfg.gl_penalty.uses_sigma_hat },
    { "c_ms", cfg.ms_constant },
  };
}

fs::path prepare_out(const cli::Settings& s)
{
  fs::path dir = cli::output_dir_from(s);
  fs::create_directories(dir);
  return dir;
}

void write_metadata(const fs::path& dir, const std::string& command,
                    nlohmann::json body, const cli::Settings& s)
{
  body["command"] = command;
  body["version"] = kVersion;
  body["settings"] = s;
  std::ofstream os(dir / "metadata.json");
  os << std::setw(2) << body << '\n';
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& w)
{
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot write " + path.string());
  }
  w(os);
}

int cmd_simulate(const cli::Settings& s)
{
  const ExperimentConfig cfg = cli::experiment_from(s);
  const fs::path dir = prepare_out(s);
  const ExperimentResult res = run_experiment(cfg);
  write_file(dir / "raw.csv", [&](std::ostream& os) { write_raw_csv(os, res.records); });
  write_file(dir / "summary.csv", [&](std::ostream& os) { write_summary_csv(os, res.summary); });
  write_metadata(dir, "simulate", { { "config", config_json(cfg) } }, s);
  write_summary_csv(std::cout, res.summary);
  return kExitOk;
}

int cmd_bands(const cli::Settings& s)
{
  const ExperimentConfig cfg = cli::experiment_from(s);
  const fs::path dir = prepare_out(s);
  const BandTable bands = compute_bands(cfg);
  write_file(dir / "bands.csv", [&](std::ostream& os) { write_bands_csv(os, bands); });
  write_metadata(dir, "bands", { { "config", config_json(cfg) } }, s);
  return kExitOk;
}

int cmd_calibrate(const cli::Settings& s)
{
  const ExperimentConfig cfg = cli::experiment_from(s);
  const auto grid = cli::c_grid_from(s);
  const Index reps = cli::calibration_reps_from(s);
  const fs::path dir = prepare_out(s);
  const CalibrationResult cal = calibrate_constant(cfg, grid, reps);
  write_file(dir / "calibration.csv",
             [&](std::ostream& os) { write_calibration_csv(os, cal); });
  if (!cal.gl_quasi_convex || !cal.ms_quasi_convex) {
    std::cerr << "warning: mean ISE is not quasi-convex on the constant grid\n";
  }
  write_metadata(dir, "calibrate",
                 { { "config", config_json(cfg) },
                   { "calibration_reps", reps },
                   { "c_grid", grid },
                   { "calibrated", { { "c_gl", cal.c_gl }, { "c_ms", cal.c_ms } } } },
                 s);
  std::cout << "c_gl = " << cal.c_gl << "\nc_ms = " << cal.c_ms << '\n';
  return kExitOk;
}

int cmd_check(const cli::Settings& s)
{
  const CheckOptions opt = cli::check_options_from(s);
  const auto results = run_theory_checks(opt);
  bool all = true;
  std::cout << std::left << std::setw(34) << "check" << std::setw(8) << "result"
            << std::setw(14) << "value" << std::setw(14) << "threshold" << "detail\n";
  for (const auto& r : results) {
    all = all && r.pass;
    std::cout << std::left << std::setw(34) << r.name << std::setw(8)
              << (r.pass ? "PASS" : "FAIL") << std::setw(14) << r.value
              << std::setw(14) << r.threshold << r.detail << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Adaptive orthogonal-series estimation: simulations and checks" };
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Flags sim, bands, cal, check;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo ISE table (raw + summary CSV)");
  add_experiment_flags(*sim_cmd, sim);
  auto* bands_cmd = app.add_subcommand("bands", "pointwise percentile bands of the GL estimate");
  add_experiment_flags(*bands_cmd, bands);
  auto* cal_cmd = app.add_subcommand("calibrate", "grid search of the penalty constant");
  add_experiment_flags(*cal_cmd, cal);
  add_setting(*cal_cmd, cal, "--c-grid", "calibration.c_grid", "comma list of constants");
  add_setting(*cal_cmd, cal, "--calib-reps", "calibration.reps", "calibration replications");
  auto* check_cmd = app.add_subcommand("check", "theory-check suite");
  check_cmd->add_option("--config", check.config, "INI config file")->check(CLI::ExistingFile);
  add_setting(*check_cmd, check, "--seed", "check.seed", "seed");
  add_setting(*check_cmd, check, "--workers", "experiment.workers", "worker threads");
  add_setting(*check_cmd, check, "--audit-pen-constant", "check.audit_pen_constant",
              "constant c of the audit penalties c m / n");
  check_cmd->add_flag_callback(
    "--quick", [&check] { check.settings["check.quick"] = "1"; }, "reduced sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim_cmd) {
      return cmd_simulate(resolve(sim));
    }
    if (*bands_cmd) {
      return cmd_bands(resolve(bands));
    }
    if (*cal_cmd) {
      return cmd_calibrate(resolve(cal));
    }
    return cmd_check(resolve(check));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
