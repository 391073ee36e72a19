#include "loschmidt/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace loschmidt {

namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

int resolve_workers(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("LOSCHMIDT_MAX_WORKERS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

// results land in caller-indexed slots, so any worker count gives identical output
template <typename Fn>
void parallel_for(int n_items, int workers, Fn&& fn) {
  workers = std::min(workers, n_items);
  if (workers <= 1) {
    for (int i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// grid ending exactly at t_max for auto steps; user steps are kept verbatim
// and the window is snapped down to the last full step
TimeGrid resolve_grid(double t_max, double dt_user, double dt_auto) {
  TimeGrid g;
  g.t0 = 0.0;
  if (dt_user > 0.0) {
    g.dt = dt_user;
    g.n_points = std::max(2, static_cast<int>(std::floor(t_max / dt_user + 1e-9)) + 1);
  } else {
    const int n = std::max(2, static_cast<int>(std::llround(t_max / dt_auto)) + 1);
    g.dt = t_max / (n - 1);
    g.n_points = n;
  }
  return g;
}

}  // namespace

void SweepSpec::validate() const {
  if (n_values.empty()) throw ConfigError("sweep needs at least one n_spins value");
  if (lambda_star_values.empty())
    throw ConfigError("sweep needs at least one lambda_star value");
  for (int n : n_values)
    ChainConfig{j, lambda_star_values.front() - delta, delta, n}.validate();
}

std::vector<double> lambda_star_range(double min, double max, double step) {
  if (!(step > 0.0)) throw ConfigError("lambda_star scan step must be > 0");
  if (max < min) throw ConfigError("lambda_star scan needs max >= min");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = min + i * step;
    if (v > max + step * 1e-9) break;
    out.push_back(v);
  }
  return out;
}

double auto_dt(const ModeSpectrum& spectrum) {
  const double eps_max = spectrum.max_eps_e();
  double s = 0.0;
  for (const Mode& m : spectrum.modes) s += std::abs(m.eps_e - m.eps_g);
  // resolve the fastest factor and keep the net phase rate well under pi/step
  const double by_mode = std::numbers::pi / (20.0 * eps_max);
  const double by_phase = std::numbers::pi / (8.0 * std::max(s, eps_max));
  return std::min(by_mode, by_phase);
}

namespace {

SweepRow compute_cell(const SweepSpec& spec, int n_spins, double lambda_star) {
  SweepRow row;
  row.n_spins = n_spins;
  row.lambda_star = lambda_star;
  try {
    const ChainConfig config{spec.j, lambda_star - spec.delta, spec.delta, n_spins};
    config.validate();
    const ModeSpectrum sp = mode_spectrum(config);
    const double tm = spec.t_max > 0.0 ? spec.t_max : default_t_max(config);
    const TimeGrid grid = resolve_grid(tm, spec.dt, auto_dt(sp));

    DecoherenceSeries series;
    series.grid = grid;
    series.echo = echo_values(sp, grid);  // enforces the Nyquist contract

    const NonMarkovianityReport rep =
        blp_measure(series, grid.t_end(), 0.9 * recurrence_time(config));
    std::vector<std::uint8_t> clamped;
    const std::vector<double> gamma = dephasing_rate(series, sp, &clamped);

    row.blp = rep.value;
    row.t_max = rep.t_max;
    row.n_intervals = static_cast<int>(rep.intervals.size());
    row.min_gamma = gamma.empty() ? 0.0 : *std::min_element(gamma.begin(), gamma.end());
  } catch (const std::exception& e) {
    row.error = e.what();
    row.blp = std::nan("");
    row.t_max = std::nan("");
    row.min_gamma = std::nan("");
    row.n_intervals = 0;
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const int n_cells =
      static_cast<int>(spec.n_values.size() * spec.lambda_star_values.size());
  SweepResult result;
  result.rows.resize(static_cast<size_t>(n_cells));
  const int workers = resolve_workers(spec.max_workers);
  const int n_lam = static_cast<int>(spec.lambda_star_values.size());
  parallel_for(n_cells, workers, [&](int idx) {
    const int n = spec.n_values[static_cast<size_t>(idx / n_lam)];
    const double ls = spec.lambda_star_values[static_cast<size_t>(idx % n_lam)];
    result.rows[static_cast<size_t>(idx)] = compute_cell(spec, n, ls);
  });
  return result;
}

CriticalPoint detect_critical_point(const SweepResult& result, int n_spins) {
  std::vector<const SweepRow*> rows;
  for (const SweepRow& r : result.rows)
    if (r.n_spins == n_spins && r.error.empty()) rows.push_back(&r);
  if (rows.size() < 3)
    throw NotFoundError("no lambda_star scan with >= 3 clean points for n_spins=" +
                        std::to_string(n_spins));
  const SweepRow* best = rows.front();
  for (const SweepRow* r : rows)
    if (r->blp < best->blp) best = r;
  std::vector<const SweepRow*> tied;
  for (const SweepRow* r : rows)
    if (r->blp <= best->blp + 1e-15) tied.push_back(r);
  if (tied.size() > 1) {
    std::ostringstream msg;
    msg << "blp minimum is degenerate across lambda_star = {";
    for (size_t i = 0; i < tied.size(); ++i)
      msg << (i ? ", " : "") << num(tied[i]->lambda_star);
    msg << "}; scan carries no critical-point information";
    throw AmbiguityError(msg.str());
  }
  return {best->lambda_star, best->blp, best->blp < 1e-10};
}

SeriesBundle compute_series(const ChainConfig& config, double t_max, double dt,
                            int n_points) {
  config.validate();
  SeriesBundle b;
  b.spectrum = mode_spectrum(config);
  TimeGrid grid;
  if (n_points > 0) {
    if (!(dt > 0.0)) throw GridError("n_points given without a positive dt");
    grid = TimeGrid{0.0, dt, n_points};
  } else {
    const double tm = t_max > 0.0 ? t_max : default_t_max(config);
    grid = resolve_grid(tm, dt, auto_dt(b.spectrum));
  }
  b.series = echo_series(b.spectrum, grid);
  b.rates = rate_series(b.series, b.spectrum);
  b.fisher = fisher_flow(b.series, b.rates);
  b.report = blp_measure(b.series, grid.t_end(), 0.9 * recurrence_time(config));
  return b;
}

std::string series_csv(const SeriesBundle& b) {
  std::string out = "t,re_nu,im_nu,L,phi,gamma,lamb,fisher_flow\n";
  const int n = b.series.grid.n_points;
  for (int i = 0; i < n; ++i) {
    const size_t u = static_cast<size_t>(i);
    out += num(b.series.grid.time(i));
    out += ',';
    out += num(b.series.nu[u].real());
    out += ',';
    out += num(b.series.nu[u].imag());
    out += ',';
    out += num(b.series.echo[u]);
    out += ',';
    out += num(b.series.phase[u]);
    out += ',';
    out += num(b.rates.gamma[u]);
    out += ',';
    out += num(b.rates.lamb[u]);
    out += ',';
    out += num(b.fisher.flow[u]);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "n_spins,lambda_star,blp,t_max,n_intervals,min_gamma,error\n";
  for (const SweepRow& r : result.rows) {
    out += std::to_string(r.n_spins);
    out += ',';
    out += num(r.lambda_star);
    out += ',';
    out += num(r.blp);
    out += ',';
    out += num(r.t_max);
    out += ',';
    out += std::to_string(r.n_intervals);
    out += ',';
    out += num(r.min_gamma);
    out += ',';
    out += csv_field(r.error);
    out += '\n';
  }
  return out;
}

std::string oracle_csv(const ChainConfig& config, const TimeGrid& grid) {
  const DecoherenceSeries qp = echo_series(config, grid);
  const DecoherenceSeries ed =
      oracle_echo(config.n_spins, config.lambda, config.delta, config.j, grid);
  std::string out = "t,re_nu,im_nu,L,re_nu_oracle,im_nu_oracle,L_oracle,abs_dL\n";
  for (int i = 0; i < grid.n_points; ++i) {
    const size_t u = static_cast<size_t>(i);
    out += num(grid.time(i));
    out += ',';
    out += num(qp.nu[u].real());
    out += ',';
    out += num(qp.nu[u].imag());
    out += ',';
    out += num(qp.echo[u]);
    out += ',';
    out += num(ed.nu[u].real());
    out += ',';
    out += num(ed.nu[u].imag());
    out += ',';
    out += num(ed.echo[u]);
    out += ',';
    out += num(std::abs(qp.echo[u] - ed.echo[u]));
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& payload) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << payload;
  if (!f) throw IoError("write to '" + path + "' failed");
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

double t_max_field(const json& j) {
  if (!j.contains("t_max")) return 0.0;
  const auto& v = j.at("t_max");
  if (v.is_string()) {
    if (v.get<std::string>() == "auto") return 0.0;
    throw ConfigError("t_max must be a number or \"auto\"");
  }
  return v.get<double>();
}

}  // namespace

SeriesSpec parse_series_config(const std::string& json_text) {
  const json j = parse_json(json_text);
  SeriesSpec s;
  try {
    s.config.j = j.value("j", 1.0);
    s.config.delta = j.value("delta", 0.01);
    s.config.n_spins = j.value("n_spins", 400);
    if (j.contains("lambda") && j.contains("lambda_star"))
      throw ConfigError("give lambda or lambda_star, not both");
    if (j.contains("lambda_star"))
      s.config.lambda = j.at("lambda_star").get<double>() - s.config.delta;
    else
      s.config.lambda = j.value("lambda", 1.0 - s.config.delta);
    s.t_max = t_max_field(j);
    s.dt = j.value("dt", 0.0);
    s.n_points = j.value("n_points", 0);
    s.output = j.value("output", "");
    s.oracle = j.value("oracle", false);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad series config: ") + e.what());
  }
  return s;
}

SweepSpec parse_sweep_config(const std::string& json_text) {
  const json j = parse_json(json_text);
  SweepSpec s;
  try {
    s.j = j.value("j", 1.0);
    s.delta = j.value("delta", 0.01);
    if (j.contains("n_values")) s.n_values = j.at("n_values").get<std::vector<int>>();
    if (j.contains("lambda_star_values"))
      s.lambda_star_values = j.at("lambda_star_values").get<std::vector<double>>();
    else if (j.contains("lambda_star_range")) {
      const auto& r = j.at("lambda_star_range");
      s.lambda_star_values = lambda_star_range(
          r.at("min").get<double>(), r.at("max").get<double>(), r.at("step").get<double>());
    }
    s.t_max = t_max_field(j);
    s.dt = j.value("dt", 0.0);
    s.max_workers = j.value("max_workers", 0);
    s.output = j.value("output", "");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad sweep config: ") + e.what());
  }
  return s;
}

}  // namespace loschmidt
