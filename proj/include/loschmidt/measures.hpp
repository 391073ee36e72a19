#pragma once

#include "loschmidt/dynamics.hpp"

namespace loschmidt {

// One information-backflow interval: L grows from a local minimum at a to the
// following local maximum at b.
struct GrowthInterval {
  double a = 0.0;
  double b = 0.0;
  double echo_a = 0.0;
  double echo_b = 0.0;
};

struct NonMarkovianityReport {
  double value = 0.0;  // sum over intervals of sqrt(echo_b) - sqrt(echo_a)
  std::vector<GrowthInterval> intervals;
  double t_max = 0.0;  // truncation actually used (snapped to the grid)
  int n_grid_points = 0;
  double guard = 0.0;               // 0.9 T_rec when supplied, else 0
  bool truncation_warning = false;  // t_max exceeded the guard
};

// half trace norm of the difference; for qubits the Bloch half-distance
double trace_distance(const QubitState& a, const QubitState& b);

// Trace-distance measure via the turning points of L: detect strict local
// extrema (plateaus within 1e-14 collapsed to their midpoint), refine each by
// three-point parabolic interpolation, pair minima with the following maxima,
// and sum sqrt(L_b) - sqrt(L_a). A window end with L rising into it closes the
// last interval. t_max <= 0 keeps the full grid; guard > 0 arms the
// truncation warning.
NonMarkovianityReport blp_measure(const DecoherenceSeries& series, double t_max = 0.0,
                                  double guard = 0.0);

// Entanglement-based measure: total positive variation of C(t) = sqrt(L(t)),
// accumulated as (total variation + net change)/2 over the same refined
// turning-point reconstruction (sharing the reconstruction is what makes the
// two measures agree to 1e-12; raw grid sums differ at O(dt^2)).
double rhp_entanglement_measure(const DecoherenceSeries& series, double t_max = 0.0);

struct FisherSeries {
  TimeGrid grid;
  std::vector<double> fisher;  // F(t) = L(t) for the equatorial probe
  std::vector<double> flow;    // I_F(t) = F'(t) = -4 gamma L
};

FisherSeries fisher_flow(const DecoherenceSeries& series, const RateSeries& rates);

// dL/dt by 4th-order finite differences (one-sided stencils at the edges);
// equals the Fisher flow -4 gamma L away from clamped points.
std::vector<double> squared_distance_flow(const DecoherenceSeries& series);

// T_rec = n_spins / (2 v_max), v_max = max_k |d eps^e/dk| on the momentum grid
// by centered differences (one-sided at the grid ends).
double recurrence_time(const ChainConfig& config);

// Auto-truncation policy: min(0.9 T_rec, 60/J). 0.9 T_rec keeps the window
// clear of the ballistic wrap-around revival; the fixed 60/J cap additionally
// avoids the pre-asymptotic micro-revivals that the weakly dispersing
// low-k modes (k ~< sqrt(2 delta/J)) produce near criticality well before the
// wrap once N*delta is large (measured onsets at delta = 0.01: t*J ~ 93 for
// N = 1000, ~ 204 for N = 4000).
double default_t_max(const ChainConfig& config);

}  // namespace loschmidt
