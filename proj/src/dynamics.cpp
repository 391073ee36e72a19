#include "loschmidt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace loschmidt {

namespace {

constexpr double kSingularFactor = 1e-12;  // echo factor below this flags a clamp
constexpr double kRateClamp = 1e6;

void check_series(const DecoherenceSeries& s) {
  s.grid.validate();
  if (static_cast<int>(s.echo.size()) != s.grid.n_points)
    throw DomainError("series echo length does not match its grid");
}

}  // namespace

std::vector<double> dephasing_rate(const DecoherenceSeries& series,
                                   const ModeSpectrum& spectrum,
                                   std::vector<std::uint8_t>* clamped_out) {
  check_series(series);
  const size_t nm = spectrum.modes.size();
  std::vector<double> s2(nm), ee(nm);
  for (size_t m = 0; m < nm; ++m) {
    const double s = std::sin(2.0 * spectrum.modes[m].alpha);
    s2[m] = s * s;
    ee[m] = spectrum.modes[m].eps_e;
  }
  const int n = series.grid.n_points;
  std::vector<double> gamma(static_cast<size_t>(n));
  if (clamped_out) clamped_out->assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const double t = series.grid.time(i);
    double acc = 0.0;
    bool clamped = false;
    for (size_t m = 0; m < nm; ++m) {
      const double se = std::sin(ee[m] * t);
      const double ce = std::cos(ee[m] * t);
      const double f = 1.0 - s2[m] * se * se;
      if (f < kSingularFactor) clamped = true;
      // d/dt log f = -sin^2(2a) eps_e sin(2 eps_e t) / f; gamma = -sum/4
      acc += s2[m] * ee[m] * 2.0 * se * ce / std::max(f, 1e-300);
    }
    double g = 0.25 * acc;
    if (clamped) {
      g = std::clamp(g, -kRateClamp, kRateClamp);
      if (clamped_out) (*clamped_out)[static_cast<size_t>(i)] = 1;
    }
    gamma[static_cast<size_t>(i)] = g;
  }
  return gamma;
}

std::vector<double> lamb_shift(const DecoherenceSeries& series) {
  check_series(series);
  if (static_cast<int>(series.phase.size()) != series.grid.n_points)
    throw DomainError("series phase length does not match its grid");
  const int n = series.grid.n_points;
  const double dt = series.grid.dt;
  const auto& phi = series.phase;
  std::vector<double> lamb(static_cast<size_t>(n));
  lamb[0] = -0.5 * (phi[1] - phi[0]) / dt;
  for (int i = 1; i + 1 < n; ++i)
    lamb[static_cast<size_t>(i)] =
        -0.5 * (phi[static_cast<size_t>(i + 1)] - phi[static_cast<size_t>(i - 1)]) / (2.0 * dt);
  lamb[static_cast<size_t>(n - 1)] =
      -0.5 * (phi[static_cast<size_t>(n - 1)] - phi[static_cast<size_t>(n - 2)]) / dt;
  return lamb;
}

RateSeries rate_series(const DecoherenceSeries& series, const ModeSpectrum& spectrum) {
  RateSeries r;
  r.grid = series.grid;
  r.gamma = dephasing_rate(series, spectrum, &r.clamped);
  r.lamb = lamb_shift(series);
  return r;
}

namespace {

Eigen::Matrix2cd generator(const Eigen::Matrix2cd& rho, double gamma, double lamb) {
  static const Eigen::Matrix2cd sz = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  const std::complex<double> i_unit(0.0, 1.0);
  return i_unit * lamb * (sz * rho - rho * sz) + gamma * (sz * rho * sz - rho);
}

}  // namespace

std::vector<QubitState> evolve_master_equation(const QubitState& initial,
                                               const RateSeries& rates) {
  rates.grid.validate();
  const int n = rates.grid.n_points;
  if (static_cast<int>(rates.gamma.size()) != n || static_cast<int>(rates.lamb.size()) != n)
    throw DomainError("rate series length does not match its grid");
  initial.validate();

  std::vector<QubitState> traj(static_cast<size_t>(n));
  traj[0] = initial;
  const double dt = rates.grid.dt;
  for (int i = 0; i + 1 < n; ++i) {
    const double g0 = rates.gamma[static_cast<size_t>(i)];
    const double g1 = rates.gamma[static_cast<size_t>(i + 1)];
    const double l0 = rates.lamb[static_cast<size_t>(i)];
    const double l1 = rates.lamb[static_cast<size_t>(i + 1)];
    const double gh = 0.5 * (g0 + g1);
    const double lh = 0.5 * (l0 + l1);
    const Eigen::Matrix2cd& rho = traj[static_cast<size_t>(i)].rho;
    const Eigen::Matrix2cd k1 = generator(rho, g0, l0);
    const Eigen::Matrix2cd k2 = generator(rho + 0.5 * dt * k1, gh, lh);
    const Eigen::Matrix2cd k3 = generator(rho + 0.5 * dt * k2, gh, lh);
    const Eigen::Matrix2cd k4 = generator(rho + dt * k3, g1, l1);
    QubitState next;
    next.rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (next.bloch().norm() > 1.0 + 1e-6 ||
        std::abs((next.rho(0, 0) + next.rho(1, 1)).real() - 1.0) > 1e-8)
      throw PhysicalityError("master-equation integration left the physical ball at t=" +
                             std::to_string(rates.grid.time(i + 1)) +
                             " (clamped or divergent rates?)");
    traj[static_cast<size_t>(i + 1)] = next;
  }
  return traj;
}

}  // namespace loschmidt
