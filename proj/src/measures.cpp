#include "loschmidt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace loschmidt {

double trace_distance(const QubitState& a, const QubitState& b) {
  const Eigen::Matrix2cd d = a.rho - b.rho;
  const double p = d(0, 0).real();
  const double r = d(1, 1).real();
  const std::complex<double> q = 0.5 * (d(0, 1) + std::conj(d(1, 0)));
  const double mean = 0.5 * (p + r);
  const double disc = std::sqrt(0.25 * (p - r) * (p - r) + std::norm(q));
  return 0.5 * (std::abs(mean + disc) + std::abs(mean - disc));
}

namespace {

constexpr double kPlateauTol = 1e-14;  // adjacent samples closer than this merge

struct TurnNode {
  double t;
  double v;
};

// Refine a strict grid extremum at index i by the parabola through its
// neighbors; clamps to [0, 1] (echo values) and keeps the sample when the
// curvature vanishes or the vertex falls outside the neighbor pair.
TurnNode refined(const std::vector<double>& ts, const std::vector<double>& vs, int i) {
  const double a = vs[static_cast<size_t>(i - 1)];
  const double b = vs[static_cast<size_t>(i)];
  const double c = vs[static_cast<size_t>(i + 1)];
  const double d2 = a - 2.0 * b + c;
  if (d2 == 0.0) return {ts[static_cast<size_t>(i)], b};
  const double x = (a - c) / (2.0 * d2);  // vertex offset in grid units
  if (!(std::abs(x) < 1.0)) return {ts[static_cast<size_t>(i)], b};
  const double dt = ts[static_cast<size_t>(i)] - ts[static_cast<size_t>(i - 1)];
  const double v = b - (c - a) * (c - a) / (8.0 * d2);
  return {ts[static_cast<size_t>(i)] + x * dt, std::clamp(v, 0.0, 1.0)};
}

// Window [0, m) of the sampled echo reduced to its turning points: window
// endpoints plus every refined strict local extremum, with plateaus (adjacent
// values within 1e-14) collapsed to their midpoint first. Consecutive nodes
// bracket grid-monotone stretches, so signs of node differences are reliable.
std::vector<TurnNode> turning_nodes(const std::vector<double>& ts,
                                    const std::vector<double>& vs, int m) {
  struct Group {
    int lo, hi;  // inclusive sample range
    double v;
  };
  std::vector<Group> groups;
  for (int i = 0; i < m;) {
    int jj = i;
    while (jj + 1 < m &&
           std::abs(vs[static_cast<size_t>(jj + 1)] - vs[static_cast<size_t>(jj)]) <= kPlateauTol)
      ++jj;
    groups.push_back({i, jj, vs[static_cast<size_t>((i + jj) / 2)]});
    i = jj + 1;
  }

  std::vector<TurnNode> nodes;
  nodes.push_back({ts[0], vs[0]});
  for (size_t g = 1; g + 1 < groups.size(); ++g) {
    const double prev = groups[g - 1].v;
    const double next = groups[g + 1].v;
    const double here = groups[g].v;
    const bool is_min = here < prev && here < next;
    const bool is_max = here > prev && here > next;
    if (!is_min && !is_max) continue;
    if (groups[g].lo == groups[g].hi) {
      nodes.push_back(refined(ts, vs, groups[g].lo));
    } else {
      // plateau extremum: midpoint position, plateau value, no refinement
      const double tm = 0.5 * (ts[static_cast<size_t>(groups[g].lo)] +
                               ts[static_cast<size_t>(groups[g].hi)]);
      nodes.push_back({tm, here});
    }
  }
  nodes.push_back({ts[static_cast<size_t>(m - 1)], vs[static_cast<size_t>(m - 1)]});
  return nodes;
}

int window_points(const DecoherenceSeries& series, double t_max) {
  series.grid.validate();
  if (static_cast<int>(series.echo.size()) != series.grid.n_points)
    throw DomainError("series echo length does not match its grid");
  if (t_max <= 0.0) return series.grid.n_points;  // full window
  const double eps = series.grid.dt * 1e-9;
  if (t_max > series.grid.t_end() + eps)
    throw DomainError("t_max=" + std::to_string(t_max) + " exceeds the series end t=" +
                      std::to_string(series.grid.t_end()));
  int m = static_cast<int>(std::floor((t_max - series.grid.t0) / series.grid.dt + 1e-9)) + 1;
  m = std::min(m, series.grid.n_points);
  if (m < 2) throw DomainError("t_max leaves fewer than two grid points in the window");
  return m;
}

}  // namespace

NonMarkovianityReport blp_measure(const DecoherenceSeries& series, double t_max,
                                  double guard) {
  const int m = window_points(series, t_max);
  const auto ts = series.grid.times();
  const auto nodes = turning_nodes(ts, series.echo, m);

  NonMarkovianityReport rep;
  rep.t_max = ts[static_cast<size_t>(m - 1)];
  rep.n_grid_points = m;
  rep.guard = guard;
  rep.truncation_warning = guard > 0.0 && rep.t_max > guard * (1.0 + 1e-12);
  // every rising pair of consecutive turning nodes is one growth interval
  // (minimum -> following maximum; window ends stand in at the boundaries)
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i + 1].v > nodes[i].v) {
      GrowthInterval gi;
      gi.a = nodes[i].t;
      gi.b = nodes[i + 1].t;
      gi.echo_a = nodes[i].v;
      gi.echo_b = nodes[i + 1].v;
      rep.intervals.push_back(gi);
      rep.value += std::sqrt(gi.echo_b) - std::sqrt(gi.echo_a);
    }
  }
  return rep;
}

double rhp_entanglement_measure(const DecoherenceSeries& series, double t_max) {
  const int m = window_points(series, t_max);
  const auto ts = series.grid.times();
  const auto nodes = turning_nodes(ts, series.echo, m);
  // positive variation of C = sqrt(L) as (total variation + net change)/2
  double tv = 0.0;
  for (size_t i = 0; i + 1 < nodes.size(); ++i)
    tv += std::abs(std::sqrt(nodes[i + 1].v) - std::sqrt(nodes[i].v));
  const double net = std::sqrt(nodes.back().v) - std::sqrt(nodes.front().v);
  return 0.5 * (tv + net);
}

FisherSeries fisher_flow(const DecoherenceSeries& series, const RateSeries& rates) {
  if (!(series.grid == rates.grid))
    throw DomainError("series and rates live on different grids");
  if (static_cast<int>(series.echo.size()) != series.grid.n_points ||
      static_cast<int>(rates.gamma.size()) != series.grid.n_points)
    throw DomainError("series/rates length does not match the grid");
  FisherSeries f;
  f.grid = series.grid;
  f.fisher = series.echo;  // F(t) = L(t) for the equatorial probe, F(0) = 1
  f.flow.resize(series.echo.size());
  for (size_t i = 0; i < series.echo.size(); ++i)
    f.flow[i] = -4.0 * rates.gamma[i] * series.echo[i];
  return f;
}

std::vector<double> squared_distance_flow(const DecoherenceSeries& series) {
  series.grid.validate();
  if (static_cast<int>(series.echo.size()) != series.grid.n_points)
    throw DomainError("series echo length does not match its grid");
  const auto& l = series.echo;
  const int n = series.grid.n_points;
  const double dt = series.grid.dt;
  std::vector<double> out(static_cast<size_t>(n));
  auto at = [&](int i) { return l[static_cast<size_t>(i)]; };
  if (n >= 5) {
    // 4th-order stencils throughout, one-sided at the edges
    out[0] = (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) /
             (12.0 * dt);
    out[1] =
        (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) / (12.0 * dt);
    for (int i = 2; i + 2 < n; ++i)
      out[static_cast<size_t>(i)] =
          (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * dt);
    out[static_cast<size_t>(n - 2)] =
        -(-3.0 * at(n - 1) - 10.0 * at(n - 2) + 18.0 * at(n - 3) - 6.0 * at(n - 4) +
          at(n - 5)) /
        (12.0 * dt);
    out[static_cast<size_t>(n - 1)] =
        -(-25.0 * at(n - 1) + 48.0 * at(n - 2) - 36.0 * at(n - 3) + 16.0 * at(n - 4) -
          3.0 * at(n - 5)) /
        (12.0 * dt);
  } else {
    out[0] = (at(1) - at(0)) / dt;
    for (int i = 1; i + 1 < n; ++i)
      out[static_cast<size_t>(i)] = (at(i + 1) - at(i - 1)) / (2.0 * dt);
    out[static_cast<size_t>(n - 1)] = (at(n - 1) - at(n - 2)) / dt;
  }
  return out;
}

double recurrence_time(const ChainConfig& config) {
  const ModeSpectrum sp = mode_spectrum(config);
  const auto& m = sp.modes;
  const size_t nm = m.size();
  double vmax = 0.0;
  for (size_t i = 0; i < nm; ++i) {
    double v;
    if (i == 0)
      v = (m[1].eps_e - m[0].eps_e) / (m[1].k - m[0].k);
    else if (i + 1 == nm)
      v = (m[nm - 1].eps_e - m[nm - 2].eps_e) / (m[nm - 1].k - m[nm - 2].k);
    else
      v = (m[i + 1].eps_e - m[i - 1].eps_e) / (m[i + 1].k - m[i - 1].k);
    vmax = std::max(vmax, std::abs(v));
  }
  if (!(vmax > 0.0)) throw DomainError("dispersion has no positive group velocity");
  return config.n_spins / (2.0 * vmax);
}

double default_t_max(const ChainConfig& config) {
  return std::min(0.9 * recurrence_time(config), 60.0 / config.j);
}

}  // namespace loschmidt
