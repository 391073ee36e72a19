#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "loschmidt/chain.hpp"
#include "loschmidt/time_grid.hpp"

namespace loschmidt {

// nu(t), L(t) = |nu|^2 and the unwrapped phase phi(t) on one grid.
struct DecoherenceSeries {
  TimeGrid grid;
  std::vector<std::complex<double>> nu;
  std::vector<double> echo;   // L
  std::vector<double> phase;  // phi, unwrapped by nearest-branch increments
};

// Qubit density matrix in the pointer basis; row/col order (|g>, |e>).
struct QubitState {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();

  static QubitState pure(std::complex<double> c_g, std::complex<double> c_e);
  // (|g> + e^{i azimuth}|e>)/sqrt(2)
  static QubitState equatorial(double azimuth);

  // (x, y, z) with sigma_z = |g><g| - |e><e|
  Eigen::Vector3d bloch() const;
  void validate(double tol = 1e-9) const;
};

// L(t) = prod_{k>0} [1 - sin^2(2 alpha_k) sin^2(eps^e_k t)];
// switches to log-space accumulation when a factor drops below 1e-14 or the
// running product underflows, returning exact 0 only for an exactly-zero factor.
double loschmidt_echo(const ModeSpectrum& spectrum, double t);

// nu(t) = prod_{k>0} e^{-i eps^g_k t} [cos(eps^e_k t) + i cos(2 alpha_k) sin(eps^e_k t)],
// the 2x2 block-propagator overlap of the +-k pair subspace.
std::complex<double> decoherence_factor(const ModeSpectrum& spectrum, double t);

// P = (1 + L)/2
double purity(double echo);

// populations kept, coherence <e|rho|g> multiplied by nu
QubitState exact_qubit_state(const QubitState& initial, std::complex<double> nu);

// grid contract: dt <= pi / (10 max_k eps^e_k)
double nyquist_dt_bound(const ModeSpectrum& spectrum);

// L(t) on a grid without the complex factor (cheap path for sweeps)
std::vector<double> echo_values(const ModeSpectrum& spectrum, const TimeGrid& grid);

// accumulate arg increments arg(nu_i conj(nu_{i-1})); valid grids keep each < pi
std::vector<double> unwrap_phase(const std::vector<std::complex<double>>& nu);

DecoherenceSeries echo_series(const ModeSpectrum& spectrum, const TimeGrid& grid);
DecoherenceSeries echo_series(const ChainConfig& config, const TimeGrid& grid);

}  // namespace loschmidt
