#pragma once

#include <vector>

#include "loschmidt/errors.hpp"

namespace loschmidt {

// One environment instance: periodic transverse-field Ising ring
//   H(h) = -J sum_j sigma^z_j sigma^z_{j+1} + h sum_j sigma^x_j,
// with h = lambda while the qubit sits in |g> and h = lambda_star = lambda + delta
// while it sits in |e>.
struct ChainConfig {
  double j = 1.0;        // exchange coupling; sets the energy/time scale
  double lambda = 0.99;  // transverse field on the ground branch
  double delta = 0.01;   // qubit-conditional field shift
  int n_spins = 400;     // ring size, even and >= 4

  double lambda_star() const { return lambda + delta; }
  void validate() const;
};

// One k > 0 momentum mode with both dynamical branches attached.
struct Mode {
  double k;        // momentum in (0, pi)
  double theta_g;  // Bogoliubov angle at field lambda
  double theta_e;  // Bogoliubov angle at field lambda_star
  double alpha;    // theta_e - theta_g; sin^2(2 alpha) weights the echo factor
  double eps_g;    // quasiparticle energy at lambda
  double eps_e;    // quasiparticle energy at lambda_star
};

struct ModeSpectrum {
  ChainConfig config;
  std::vector<Mode> modes;  // ordered by k, exactly n_spins/2 entries
  double max_eps_e() const;
};

// Even-fermion-parity (antiperiodic) grid k_j = (2j - 1) pi / n, j = 1 .. n/2.
std::vector<double> momentum_grid(int n_spins);

// eps_k(h) = 2 J sqrt((h/J - cos k)^2 + sin^2 k)
double dispersion(double k, double field, double j);

// 2 theta_k = atan2(sin k, h/J - cos k), branch chosen so 2 theta in (0, pi)
double bogoliubov_angle(double k, double field, double j);

ModeSpectrum mode_spectrum(const ChainConfig& config);

}  // namespace loschmidt
