#pragma once

#include <vector>

#include "loschmidt/errors.hpp"

namespace loschmidt {

// Uniform time grid t_i = t0 + i*dt, i = 0 .. n_points-1.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  int n_points = 0;

  double time(int i) const { return t0 + dt * i; }
  double t_end() const { return time(n_points - 1); }
  std::vector<double> times() const;
  void validate() const;

  bool operator==(const TimeGrid&) const = default;
};

}  // namespace loschmidt
