#pragma once

#include <string>

#include "loschmidt/ed_oracle.hpp"
#include "loschmidt/measures.hpp"

namespace loschmidt {

// One (lambda_star, N) landscape scan. t_max/dt <= 0 select the auto policies.
struct SweepSpec {
  double j = 1.0;
  double delta = 0.01;
  std::vector<int> n_values;
  std::vector<double> lambda_star_values;
  double t_max = 0.0;   // <= 0: min(0.9 T_rec, 60/J) per cell
  double dt = 0.0;      // <= 0: min(pi/(20 eps_max), pi/(8 S)), S = sum_k |eps_e - eps_g|
  int max_workers = 0;  // <= 0: hardware concurrency; LOSCHMIDT_MAX_WORKERS caps it
  std::string output;   // CSV path (used by the CLI; run_sweep itself does no I/O)

  void validate() const;
};

struct SweepRow {
  int n_spins = 0;
  double lambda_star = 0.0;
  double blp = 0.0;
  double t_max = 0.0;
  int n_intervals = 0;
  double min_gamma = 0.0;
  std::string error;  // empty on success; failures never abort the sweep
};

struct SweepResult {
  std::vector<SweepRow> rows;  // deterministic N-major, lambda_star-minor order
};

struct CriticalPoint {
  double lambda_star = 0.0;
  double blp = 0.0;
  bool exact_zero = false;  // blp < 1e-10: Markovian point within resolution
};

// scan values min, min + step, ... up to max (inclusive within step*1e-9)
std::vector<double> lambda_star_range(double min, double max, double step);

// stricter than the Nyquist contract so default grids resolve every factor
// oscillation and keep the per-step phase increment well under pi
double auto_dt(const ModeSpectrum& spectrum);

SweepResult run_sweep(const SweepSpec& spec);

// lambda_star minimizing blp among the rows for n_spins; ties raise AmbiguityError
CriticalPoint detect_critical_point(const SweepResult& result, int n_spins);

// full single-configuration pipeline: series, rates, Fisher flow, blp report
struct SeriesBundle {
  ModeSpectrum spectrum;
  DecoherenceSeries series;
  RateSeries rates;
  FisherSeries fisher;
  NonMarkovianityReport report;
};

// t_max/dt <= 0: auto policies; n_points > 0 with dt > 0 pins the grid exactly
SeriesBundle compute_series(const ChainConfig& config, double t_max = 0.0,
                            double dt = 0.0, int n_points = 0);

// CSV payloads; floats printed with 17 significant digits
std::string series_csv(const SeriesBundle& bundle);
std::string sweep_csv(const SweepResult& result);
// quasiparticle/dense-oracle paired columns for small rings
std::string oracle_csv(const ChainConfig& config, const TimeGrid& grid);

void write_text_file(const std::string& path, const std::string& payload);

// JSON config ingestion (CLI flags override individual fields afterwards)
struct SeriesSpec {
  ChainConfig config;
  double t_max = 0.0;
  double dt = 0.0;
  int n_points = 0;
  std::string output;
  bool oracle = false;  // emit the paired quasiparticle/oracle CSV instead
};

SeriesSpec parse_series_config(const std::string& json_text);
SweepSpec parse_sweep_config(const std::string& json_text);

}  // namespace loschmidt
