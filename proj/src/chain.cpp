#include "loschmidt/chain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "loschmidt/time_grid.hpp"

namespace loschmidt {

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(static_cast<size_t>(n_points > 0 ? n_points : 0));
  for (int i = 0; i < n_points; ++i) out[static_cast<size_t>(i)] = time(i);
  return out;
}

void TimeGrid::validate() const {
  if (!(t0 >= 0.0)) throw GridError("time grid start must be >= 0, got t0=" + std::to_string(t0));
  if (!(dt > 0.0)) throw GridError("time grid step must be > 0, got dt=" + std::to_string(dt));
  if (n_points < 2) throw GridError("time grid needs >= 2 points, got " + std::to_string(n_points));
}

void ChainConfig::validate() const {
  if (n_spins < 4 || n_spins % 2 != 0)
    throw ConfigError("n_spins must be even and >= 4, got " + std::to_string(n_spins));
  if (!(j > 0.0)) throw ConfigError("J must be positive, got " + std::to_string(j));
  if (!std::isfinite(lambda) || !std::isfinite(delta))
    throw ConfigError("lambda and delta must be finite");
}

std::vector<double> momentum_grid(int n_spins) {
  if (n_spins < 4 || n_spins % 2 != 0)
    throw ConfigError("n_spins must be even and >= 4, got " + std::to_string(n_spins));
  std::vector<double> ks(static_cast<size_t>(n_spins / 2));
  for (int jj = 1; jj <= n_spins / 2; ++jj)
    ks[static_cast<size_t>(jj - 1)] = (2.0 * jj - 1.0) * std::numbers::pi / n_spins;
  return ks;
}

namespace {

void check_mode_args(double k, double j) {
  if (!(k > 0.0) || !(k < std::numbers::pi))
    throw DomainError("momentum must lie in (0, pi), got k=" + std::to_string(k));
  if (!(j > 0.0)) throw DomainError("J must be positive, got " + std::to_string(j));
}

}  // namespace

double dispersion(double k, double field, double j) {
  check_mode_args(k, j);
  const double x = field / j - std::cos(k);
  return 2.0 * j * std::hypot(x, std::sin(k));
}

double bogoliubov_angle(double k, double field, double j) {
  check_mode_args(k, j);
  // sin k > 0 on (0, pi) puts atan2 in (0, pi), i.e. 2 theta in (0, pi)
  return 0.5 * std::atan2(std::sin(k), field / j - std::cos(k));
}

ModeSpectrum mode_spectrum(const ChainConfig& config) {
  config.validate();
  ModeSpectrum sp;
  sp.config = config;
  const auto ks = momentum_grid(config.n_spins);
  sp.modes.reserve(ks.size());
  const double ls = config.lambda_star();
  for (double k : ks) {
    Mode m;
    m.k = k;
    m.theta_g = bogoliubov_angle(k, config.lambda, config.j);
    m.theta_e = bogoliubov_angle(k, ls, config.j);
    m.alpha = m.theta_e - m.theta_g;
    m.eps_g = dispersion(k, config.lambda, config.j);
    m.eps_e = dispersion(k, ls, config.j);
    sp.modes.push_back(m);
  }
  return sp;
}

double ModeSpectrum::max_eps_e() const {
  double mx = 0.0;
  for (const Mode& m : modes) mx = std::max(mx, m.eps_e);
  return mx;
}

}  // namespace loschmidt
