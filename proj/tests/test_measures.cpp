#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "loschmidt/measures.hpp"

using namespace loschmidt;

namespace {

// two parabolic arcs: minimum (1, 0.25), break at t = 1.5, maximum (2, 0.81);
// the exact measure over [0, 2.5] is sqrt(0.81) - sqrt(0.25) = 0.4
double two_arc_echo(double t) {
  if (t <= 1.5) return 0.25 + 0.75 * (t - 1.0) * (t - 1.0);
  return 0.81 - 1.49 * (t - 2.0) * (t - 2.0);
}

DecoherenceSeries two_arc_series() {
  DecoherenceSeries s;
  s.grid = TimeGrid{0.0, 0.1, 26};
  for (double t : s.grid.times()) s.echo.push_back(two_arc_echo(t));
  return s;
}

}  // namespace

TEST_CASE("trace distance: qubit closed form") {
  const QubitState g = QubitState::pure(1.0, 0.0);
  const QubitState e = QubitState::pure(0.0, 1.0);
  CHECK(trace_distance(g, e) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(g, g) == 0.0);
  const QubitState a = QubitState::equatorial(0.0);
  const QubitState b = QubitState::equatorial(std::acos(-1.0));
  CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  // half the Bloch distance: orthogonal equator axes give 1/sqrt(2)
  const QubitState c = QubitState::equatorial(std::acos(-1.0) / 2.0);
  CHECK(trace_distance(a, c) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
}

TEST_CASE("blp: parabolic refinement recovers off-grid turning points") {
  const DecoherenceSeries s = two_arc_series();
  const NonMarkovianityReport rep = blp_measure(s, 2.5);
  CHECK(rep.value == doctest::Approx(0.4).epsilon(1e-12));
  REQUIRE(rep.intervals.size() == 1);
  CHECK(rep.intervals[0].a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.intervals[0].b == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.intervals[0].echo_a == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rep.intervals[0].echo_b == doctest::Approx(0.81).epsilon(1e-12));
  CHECK(rep.n_grid_points == 26);
  CHECK(rep.t_max == s.grid.t_end());
  // t_max <= 0 selects the full window
  CHECK(blp_measure(s).value == doctest::Approx(rep.value).epsilon(1e-15));
}

TEST_CASE("blp: a window end inside a rise closes the last interval") {
  const DecoherenceSeries s = two_arc_series();
  const NonMarkovianityReport rep = blp_measure(s, 1.8);
  REQUIRE(rep.intervals.size() == 1);
  const double t_end = s.grid.time(18);
  CHECK(rep.intervals[0].b == t_end);
  CHECK(rep.t_max == t_end);
  const double expected = std::sqrt(two_arc_echo(t_end)) - 0.5;
  CHECK(rep.value == doctest::Approx(expected).epsilon(1e-12));
  // snapping: a t_max between samples truncates to the last full step
  CHECK(blp_measure(s, 1.84).t_max == t_end);
}

TEST_CASE("blp: plateaus collapse to a single turning point") {
  DecoherenceSeries s;
  s.grid = TimeGrid{0.0, 1.0, 7};
  s.echo = {1.0, 0.5, 0.5 + 5e-15, 0.5 - 5e-15, 0.9, 0.9, 0.4};
  const NonMarkovianityReport rep = blp_measure(s, 6.0);
  REQUIRE(rep.intervals.size() == 1);
  CHECK(rep.value ==
        doctest::Approx(std::sqrt(0.9) - std::sqrt(0.5 + 5e-15)).epsilon(1e-13));
  // plateau extrema sit at the midpoint of their sample range
  CHECK(rep.intervals[0].a == doctest::Approx(2.0));
  CHECK(rep.intervals[0].b == doctest::Approx(4.5));
}

TEST_CASE("blp and rhp agree through the shared turning-point reconstruction") {
  const DecoherenceSeries synth = two_arc_series();
  CHECK(std::abs(blp_measure(synth, 2.5).value - rhp_entanglement_measure(synth, 2.5)) <
        1e-14);
  CHECK(std::abs(blp_measure(synth, 1.8).value - rhp_entanglement_measure(synth, 1.8)) <
        1e-14);

  const ChainConfig config{1.0, 0.75, 0.05, 100};
  const ModeSpectrum sp = mode_spectrum(config);
  const TimeGrid grid{0.0, 0.02, 1401};  // t up to 28
  DecoherenceSeries s;
  s.grid = grid;
  s.echo = echo_values(sp, grid);
  const double blp = blp_measure(s, grid.t_end()).value;
  const double rhp = rhp_entanglement_measure(s, grid.t_end());
  CHECK(blp > 1e-4);  // off-critical: genuine backflow
  CHECK(std::abs(blp - rhp) < 1e-12);
}

TEST_CASE("blp: monotone decay at the critical environment gives exactly zero") {
  const ChainConfig config{1.0, 0.99, 0.01, 100};  // lambda_star = 1
  const ModeSpectrum sp = mode_spectrum(config);
  const TimeGrid grid{0.0, 0.02, 1126};  // t up to 22.5 = 0.9 T_rec
  DecoherenceSeries s;
  s.grid = grid;
  s.echo = echo_values(sp, grid);
  const NonMarkovianityReport rep = blp_measure(s, grid.t_end());
  CHECK(rep.value == 0.0);
  CHECK(rep.intervals.empty());
  CHECK(rhp_entanglement_measure(s, grid.t_end()) == 0.0);
  // the rate never goes negative on the window either
  std::vector<double> gamma = dephasing_rate(s, sp);
  double mn = 0.0;
  for (double g : gamma) mn = std::min(mn, g);
  CHECK(mn > -1e-10);
}

TEST_CASE("blp: window validation and truncation warning") {
  const DecoherenceSeries s = two_arc_series();
  CHECK_THROWS_AS(blp_measure(s, 3.0), DomainError);
  CHECK_THROWS_AS(blp_measure(s, 0.05), DomainError);
  CHECK_FALSE(blp_measure(s, 2.5, 2.6).truncation_warning);
  const NonMarkovianityReport rep = blp_measure(s, 2.5, 2.0);
  CHECK(rep.truncation_warning);
  CHECK(rep.guard == 2.0);
}

TEST_CASE("fisher flow: F = L, flow = -4 gamma L, grids must match") {
  const ChainConfig config{1.0, 0.5, 0.1, 8};
  const ModeSpectrum sp = mode_spectrum(config);
  const TimeGrid grid{0.0, 1e-3, 2001};
  const DecoherenceSeries s = echo_series(sp, grid);
  const RateSeries rates = rate_series(s, sp);
  const FisherSeries f = fisher_flow(s, rates);
  CHECK(f.fisher == s.echo);
  CHECK(f.fisher[0] == 1.0);
  for (size_t i = 0; i < f.flow.size(); ++i)
    CHECK(f.flow[i] == -4.0 * rates.gamma[i] * s.echo[i]);

  RateSeries other = rates;
  other.grid.dt *= 2.0;
  CHECK_THROWS_AS(fisher_flow(s, other), DomainError);
}

TEST_CASE("squared-distance flow: dual route to the fisher flow") {
  const ChainConfig config{1.0, 0.5, 0.1, 8};
  const ModeSpectrum sp = mode_spectrum(config);
  const TimeGrid grid{0.0, 1e-3, 2001};
  const DecoherenceSeries s = echo_series(sp, grid);
  const FisherSeries f = fisher_flow(s, rate_series(s, sp));
  const std::vector<double> fd = squared_distance_flow(s);
  double worst = 0.0;
  for (size_t i = 0; i < fd.size(); ++i) worst = std::max(worst, std::abs(fd[i] - f.flow[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("squared-distance flow: stencils are exact on a quartic") {
  DecoherenceSeries s;
  s.grid = TimeGrid{0.0, 0.1, 9};
  for (double t : s.grid.times()) s.echo.push_back(t * t * t * t);
  const std::vector<double> fd = squared_distance_flow(s);
  for (int i = 0; i < 9; ++i) {
    const double t = s.grid.time(i);
    CHECK(fd[static_cast<size_t>(i)] == doctest::Approx(4.0 * t * t * t).epsilon(1e-10));
  }
}

TEST_CASE("optimal antipodal pair: trace distance equals sqrt(L) exactly") {
  const ChainConfig config{1.0, 0.5, 0.1, 8};
  const ModeSpectrum sp = mode_spectrum(config);
  const TimeGrid grid{0.0, 0.01, 601};
  const DecoherenceSeries s = echo_series(sp, grid);
  const QubitState plus = QubitState::equatorial(0.0);
  const QubitState minus = QubitState::equatorial(std::acos(-1.0));
  for (size_t i = 0; i < s.nu.size(); ++i) {
    const double d =
        trace_distance(exact_qubit_state(plus, s.nu[i]), exact_qubit_state(minus, s.nu[i]));
    CHECK(std::abs(d - std::sqrt(s.echo[i])) < 1e-12);
  }
}

TEST_CASE("random state pairs never accumulate more backflow than the optimal pair") {
  const ChainConfig config{1.0, 0.5, 0.1, 8};
  const ModeSpectrum sp = mode_spectrum(config);
  const TimeGrid grid{0.0, 0.01, 601};
  const DecoherenceSeries s = echo_series(sp, grid);
  const double optimal = blp_measure(s, grid.t_end()).value;
  std::mt19937 rng(777);
  std::normal_distribution<double> amp(0.0, 1.0);
  for (int pair = 0; pair < 10; ++pair) {
    const QubitState a = QubitState::pure({amp(rng), amp(rng)}, {amp(rng), amp(rng)});
    const QubitState b = QubitState::pure({amp(rng), amp(rng)}, {amp(rng), amp(rng)});
    double grown = 0.0;
    double prev = 0.0;
    for (size_t i = 0; i < s.nu.size(); ++i) {
      const double d =
          trace_distance(exact_qubit_state(a, s.nu[i]), exact_qubit_state(b, s.nu[i]));
      if (i > 0 && d > prev) grown += d - prev;
      prev = d;
    }
    CHECK(grown <= optimal + 1e-9);
  }
}

TEST_CASE("recurrence time and the auto-truncation policy") {
  // critical dispersion 4J sin(k/2): group velocity tops out at 2J, so the
  // wrap-around returns after ~N/(4J)
  const ChainConfig big{1.0, 0.99, 0.01, 1000};
  CHECK(recurrence_time(big) == doctest::Approx(250.0).epsilon(5e-3));
  const ChainConfig small{1.0, 0.99, 0.01, 100};
  CHECK(default_t_max(small) == doctest::Approx(0.9 * recurrence_time(small)).epsilon(1e-15));
  CHECK(default_t_max(small) < 60.0);
  const ChainConfig huge{1.0, 0.99, 0.01, 4000};
  CHECK(default_t_max(huge) == 60.0);  // long rings hit the fixed cap
  // J sets the clock: quadrupling J shrinks both candidates fourfold
  const ChainConfig fast{4.0, 4.0 * 0.99, 4.0 * 0.01, 1000};
  CHECK(recurrence_time(fast) == doctest::Approx(recurrence_time(big) / 4.0).epsilon(1e-12));
}
