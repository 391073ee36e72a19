// CLI front end: series / sweep / critical / oracle subcommands, JSON config
// files with flag overrides, CSV outputs, machine-readable error summaries.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loschmidt/sweep.hpp"

namespace {

using loschmidt::ChainConfig;
using loschmidt::SeriesSpec;
using loschmidt::SweepSpec;
using loschmidt::TimeGrid;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw loschmidt::IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int error_code(const loschmidt::Error& e) {
  if (dynamic_cast<const loschmidt::ConfigError*>(&e)) return 2;
  if (dynamic_cast<const loschmidt::GridError*>(&e)) return 3;
  if (dynamic_cast<const loschmidt::DomainError*>(&e)) return 4;
  if (dynamic_cast<const loschmidt::PhysicalityError*>(&e)) return 5;
  if (dynamic_cast<const loschmidt::ResourceError*>(&e)) return 6;
  if (dynamic_cast<const loschmidt::NotFoundError*>(&e)) return 7;
  if (dynamic_cast<const loschmidt::AmbiguityError*>(&e)) return 8;
  if (dynamic_cast<const loschmidt::IoError*>(&e)) return 9;
  return 1;
}

const char* error_name(const loschmidt::Error& e) {
  if (dynamic_cast<const loschmidt::ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const loschmidt::GridError*>(&e)) return "GridError";
  if (dynamic_cast<const loschmidt::DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const loschmidt::PhysicalityError*>(&e)) return "PhysicalityError";
  if (dynamic_cast<const loschmidt::ResourceError*>(&e)) return "ResourceError";
  if (dynamic_cast<const loschmidt::NotFoundError*>(&e)) return "NotFoundError";
  if (dynamic_cast<const loschmidt::AmbiguityError*>(&e)) return "AmbiguityError";
  if (dynamic_cast<const loschmidt::IoError*>(&e)) return "IoError";
  return "Error";
}

// probe writability before any computation starts
void check_writable(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::app);
  if (!f) throw loschmidt::IoError("cannot open '" + path + "' for writing");
}

struct SeriesCli {
  SeriesSpec spec;
  std::string config_path;
  double lambda_star = 0.0;
  CLI::Option *o_n = nullptr, *o_j = nullptr, *o_delta = nullptr, *o_lambda = nullptr,
              *o_lstar = nullptr, *o_tmax = nullptr, *o_dt = nullptr, *o_npts = nullptr,
              *o_out = nullptr, *o_oracle = nullptr;
  double j_flag = 0, delta_flag = 0, lambda_flag = 0, tmax_flag = 0, dt_flag = 0;
  int n_spins_flag = 0, npts_flag = 0;
  std::string out_flag;
  bool oracle_flag = false;
};

void add_series_flags(CLI::App* cmd, SeriesCli& s) {
  cmd->add_option("--config", s.config_path, "JSON config file; flags override its fields");
  s.o_n = cmd->add_option("--n-spins", s.n_spins_flag, "ring size (even, >= 4)");
  s.o_j = cmd->add_option("--j", s.j_flag, "exchange coupling (default 1)");
  s.o_delta = cmd->add_option("--delta", s.delta_flag, "qubit-conditional field shift");
  s.o_lambda = cmd->add_option("--lambda", s.lambda_flag, "ground-branch field");
  s.o_lstar = cmd->add_option("--lambda-star", s.lambda_star, "excited-branch field");
  s.o_lambda->excludes(s.o_lstar);
  s.o_tmax = cmd->add_option("--t-max", s.tmax_flag,
                             "window end; omit for auto min(0.9 T_rec, 60/J)");
  s.o_dt = cmd->add_option("--dt", s.dt_flag, "time step; omit for auto");
  s.o_npts = cmd->add_option("--n-points", s.npts_flag, "pin the grid length (with --dt)");
  s.o_out = cmd->add_option("--output,-o", s.out_flag, "CSV output path");
  s.o_oracle = cmd->add_flag("--oracle", s.oracle_flag,
                             "emit paired quasiparticle/dense-oracle columns (n_spins <= 12)");
}

SeriesSpec resolve_series(const SeriesCli& s) {
  SeriesSpec spec;
  if (!s.config_path.empty()) spec = loschmidt::parse_series_config(read_file(s.config_path));
  if (*s.o_n) spec.config.n_spins = s.n_spins_flag;
  if (*s.o_j) spec.config.j = s.j_flag;
  if (*s.o_delta) spec.config.delta = s.delta_flag;
  if (*s.o_lambda) spec.config.lambda = s.lambda_flag;
  if (*s.o_lstar) spec.config.lambda = s.lambda_star - spec.config.delta;
  if (*s.o_tmax) spec.t_max = s.tmax_flag;
  if (*s.o_dt) spec.dt = s.dt_flag;
  if (*s.o_npts) spec.n_points = s.npts_flag;
  if (*s.o_out) spec.output = s.out_flag;
  if (*s.o_oracle) spec.oracle = s.oracle_flag;
  return spec;
}

struct SweepCli {
  std::string config_path;
  std::vector<int> n_values;
  std::vector<double> lambda_star_values;
  double range_min = 0, range_max = 0, range_step = 0, delta_flag = 0, j_flag = 0,
         tmax_flag = 0, dt_flag = 0;
  int workers_flag = 0;
  std::string out_flag;
  CLI::Option *o_n = nullptr, *o_vals = nullptr, *o_min = nullptr, *o_max = nullptr,
              *o_step = nullptr, *o_delta = nullptr, *o_j = nullptr, *o_tmax = nullptr,
              *o_dt = nullptr, *o_workers = nullptr, *o_out = nullptr;
};

void add_sweep_flags(CLI::App* cmd, SweepCli& s) {
  cmd->add_option("--config", s.config_path, "JSON config file; flags override its fields");
  s.o_n = cmd->add_option("--n-values", s.n_values, "ring sizes to scan");
  s.o_vals = cmd->add_option("--lambda-star-values", s.lambda_star_values,
                             "explicit lambda_star scan points");
  s.o_min = cmd->add_option("--lambda-star-min", s.range_min, "scan range start");
  s.o_max = cmd->add_option("--lambda-star-max", s.range_max, "scan range end");
  s.o_step = cmd->add_option("--lambda-star-step", s.range_step, "scan range step");
  s.o_delta = cmd->add_option("--delta", s.delta_flag, "field shift (default 0.01)");
  s.o_j = cmd->add_option("--j", s.j_flag, "exchange coupling (default 1)");
  s.o_tmax = cmd->add_option("--t-max", s.tmax_flag,
                             "window end; omit for auto min(0.9 T_rec, 60/J)");
  s.o_dt = cmd->add_option("--dt", s.dt_flag, "time step; omit for auto");
  s.o_workers = cmd->add_option("--max-workers", s.workers_flag,
                                "worker-pool cap (also LOSCHMIDT_MAX_WORKERS)");
  s.o_out = cmd->add_option("--output,-o", s.out_flag, "sweep CSV output path");
}

SweepSpec resolve_sweep(const SweepCli& s) {
  SweepSpec spec;
  if (!s.config_path.empty()) spec = loschmidt::parse_sweep_config(read_file(s.config_path));
  if (*s.o_n) spec.n_values = s.n_values;
  if (*s.o_vals) spec.lambda_star_values = s.lambda_star_values;
  if (*s.o_min || *s.o_max || *s.o_step) {
    if (!(*s.o_min && *s.o_max && *s.o_step))
      throw loschmidt::ConfigError(
          "--lambda-star-min/--lambda-star-max/--lambda-star-step must be given together");
    spec.lambda_star_values =
        loschmidt::lambda_star_range(s.range_min, s.range_max, s.range_step);
  }
  if (*s.o_delta) spec.delta = s.delta_flag;
  if (*s.o_j) spec.j = s.j_flag;
  if (*s.o_tmax) spec.t_max = s.tmax_flag;
  if (*s.o_dt) spec.dt = s.dt_flag;
  if (*s.o_workers) spec.max_workers = s.workers_flag;
  if (*s.o_out) spec.output = s.out_flag;
  return spec;
}

int run_series(const SeriesCli& cli) {
  const SeriesSpec spec = resolve_series(cli);
  if (spec.output.empty())
    throw loschmidt::ConfigError("series needs an output path (--output or config)");
  check_writable(spec.output);
  spec.config.validate();

  if (spec.oracle) {
    // paired quasiparticle/oracle CSV on an explicit small-ring grid
    double tm = spec.t_max > 0.0 ? spec.t_max : 20.0 / spec.config.j;
    double dt = spec.dt > 0.0 ? spec.dt : loschmidt::auto_dt(mode_spectrum(spec.config));
    TimeGrid grid;
    if (spec.n_points > 0 && spec.dt > 0.0)
      grid = TimeGrid{0.0, spec.dt, spec.n_points};
    else {
      const int n = std::max(2, static_cast<int>(tm / dt) + 1);
      grid = TimeGrid{0.0, tm / (n - 1), n};
    }
    const std::string csv = loschmidt::oracle_csv(spec.config, grid);
    loschmidt::write_text_file(spec.output, csv);
    json out{{"output", spec.output},
             {"n_points", grid.n_points},
             {"t_max", grid.t_end()},
             {"mode", "oracle-paired"}};
    std::cout << out.dump() << "\n";
    return 0;
  }

  const loschmidt::SeriesBundle b =
      loschmidt::compute_series(spec.config, spec.t_max, spec.dt, spec.n_points);
  loschmidt::write_text_file(spec.output, loschmidt::series_csv(b));
  json out{{"output", spec.output},
           {"n_points", b.series.grid.n_points},
           {"dt", b.series.grid.dt},
           {"t_max", b.report.t_max},
           {"recurrence_time", loschmidt::recurrence_time(spec.config)},
           {"blp", b.report.value},
           {"n_intervals", b.report.intervals.size()},
           {"truncation_warning", b.report.truncation_warning}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_sweep_cmd(const SweepCli& cli) {
  const SweepSpec spec = resolve_sweep(cli);
  if (spec.output.empty())
    throw loschmidt::ConfigError("sweep needs an output path (--output or config)");
  spec.validate();
  check_writable(spec.output);
  const auto start = std::chrono::steady_clock::now();
  const loschmidt::SweepResult result = loschmidt::run_sweep(spec);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  loschmidt::write_text_file(spec.output, loschmidt::sweep_csv(result));
  int failed = 0;
  for (const auto& r : result.rows)
    if (!r.error.empty()) ++failed;
  json out{{"output", spec.output},
           {"rows", result.rows.size()},
           {"failed_cells", failed},
           {"runtime_ms", ms}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_critical(const SweepCli& cli) {
  SweepSpec spec = resolve_sweep(cli);
  spec.validate();
  if (spec.lambda_star_values.size() < 3)
    throw loschmidt::ConfigError("critical-point detection needs >= 3 scan points");
  if (!spec.output.empty()) check_writable(spec.output);
  const loschmidt::SweepResult result = loschmidt::run_sweep(spec);
  if (!spec.output.empty())
    loschmidt::write_text_file(spec.output, loschmidt::sweep_csv(result));
  json points = json::array();
  for (int n : spec.n_values) {
    const loschmidt::CriticalPoint cp = loschmidt::detect_critical_point(result, n);
    points.push_back({{"n_spins", n},
                      {"lambda_star", cp.lambda_star},
                      {"blp", cp.blp},
                      {"exact_zero", cp.exact_zero}});
  }
  json out{{"critical_points", points}};
  if (!spec.output.empty()) out["output"] = spec.output;
  std::cout << out.dump() << "\n";
  return 0;
}

struct OracleCli {
  int n_spins = 8;
  double lambda = 0.5, delta = 0.1, j = 1.0, t_max = 20.0, dt = 0.05;
  std::string output;
};

int run_oracle(const OracleCli& cli) {
  if (!cli.output.empty()) check_writable(cli.output);
  const ChainConfig config{cli.j, cli.lambda, cli.delta, cli.n_spins};
  config.validate();
  const int n = std::max(2, static_cast<int>(cli.t_max / cli.dt) + 1);
  const TimeGrid grid{0.0, cli.t_max / (n - 1), n};
  const loschmidt::DecoherenceSeries qp = loschmidt::echo_series(config, grid);
  const loschmidt::DecoherenceSeries ed =
      loschmidt::oracle_echo(cli.n_spins, cli.lambda, cli.delta, cli.j, grid);
  double max_dl = 0.0, max_dnu = 0.0;
  for (size_t i = 0; i < qp.echo.size(); ++i) {
    max_dl = std::max(max_dl, std::abs(qp.echo[i] - ed.echo[i]));
    max_dnu = std::max(max_dnu, std::abs(qp.nu[i] - ed.nu[i]));
  }
  if (!cli.output.empty())
    loschmidt::write_text_file(cli.output, loschmidt::oracle_csv(config, grid));
  json out{{"n_spins", cli.n_spins},
           {"lambda", cli.lambda},
           {"delta", cli.delta},
           {"n_points", grid.n_points},
           {"max_abs_dL", max_dl},
           {"max_abs_dnu", max_dnu}};
  if (!cli.output.empty()) out["output"] = cli.output;
  std::cout << out.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"central-qubit dephasing against a transverse-field Ising ring"};
  app.require_subcommand(1);

  SeriesCli series_cli;
  CLI::App* series_cmd =
      app.add_subcommand("series", "one configuration -> echo/rates/flow CSV");
  add_series_flags(series_cmd, series_cli);

  SweepCli sweep_cli;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "(lambda_star, N) landscape -> sweep CSV");
  add_sweep_flags(sweep_cmd, sweep_cli);

  SweepCli critical_cli;
  CLI::App* critical_cmd = app.add_subcommand(
      "critical", "scan lambda_star and locate the Markovian point per ring size");
  add_sweep_flags(critical_cmd, critical_cli);

  OracleCli oracle_cli;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "small-ring dense-diagonalization spot check");
  oracle_cmd->add_option("--n-spins", oracle_cli.n_spins, "ring size (<= 12)");
  oracle_cmd->add_option("--lambda", oracle_cli.lambda, "ground-branch field");
  oracle_cmd->add_option("--delta", oracle_cli.delta, "field shift");
  oracle_cmd->add_option("--j", oracle_cli.j, "exchange coupling");
  oracle_cmd->add_option("--t-max", oracle_cli.t_max, "window end (default 20)");
  oracle_cmd->add_option("--dt", oracle_cli.dt, "time step (default 0.05)");
  oracle_cmd->add_option("--output,-o", oracle_cli.output, "optional paired CSV path");

  int rc = 0;
  series_cmd->callback([&] { rc = run_series(series_cli); });
  sweep_cmd->callback([&] { rc = run_sweep_cmd(sweep_cli); });
  critical_cmd->callback([&] { rc = run_critical(critical_cli); });
  oracle_cmd->callback([&] { rc = run_oracle(oracle_cli); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const loschmidt::Error& e) {
    std::cerr << json{{"error", error_name(e)}, {"message", e.what()}}.dump() << "\n";
    return error_code(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Error"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return rc;
}
