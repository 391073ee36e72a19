#include "loschmidt/echo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace loschmidt {

namespace {

constexpr double kLogSwitch = 1e-14;        // factor size triggering the log-space pass
constexpr double kUnderflowGuard = 1e-280;  // running-product floor before switching

struct FactorTables {
  std::vector<double> eps_e, eps_g, sin2_2a, cos_2a;
};

FactorTables factor_tables(const ModeSpectrum& sp) {
  FactorTables t;
  const size_t nm = sp.modes.size();
  t.eps_e.resize(nm);
  t.eps_g.resize(nm);
  t.sin2_2a.resize(nm);
  t.cos_2a.resize(nm);
  for (size_t m = 0; m < nm; ++m) {
    const Mode& md = sp.modes[m];
    const double s = std::sin(2.0 * md.alpha);
    t.eps_e[m] = md.eps_e;
    t.eps_g[m] = md.eps_g;
    t.sin2_2a[m] = s * s;
    t.cos_2a[m] = std::cos(2.0 * md.alpha);
  }
  return t;
}

// product over modes of f_k = 1 - sin^2(2a) sin^2(eps_e t), log-space fallback
double echo_at(const FactorTables& t, double time) {
  const size_t nm = t.eps_e.size();
  double prod = 1.0;
  bool fallback = false;
  for (size_t m = 0; m < nm; ++m) {
    const double s = std::sin(t.eps_e[m] * time);
    const double f = 1.0 - t.sin2_2a[m] * s * s;
    if (f < kLogSwitch) {
      fallback = true;
      break;
    }
    prod *= f;
  }
  if (!fallback && prod > kUnderflowGuard) return prod;
  double lg = 0.0;
  for (size_t m = 0; m < nm; ++m) {
    const double s = std::sin(t.eps_e[m] * time);
    const double f = 1.0 - t.sin2_2a[m] * s * s;
    if (f == 0.0) return 0.0;  // exact zero only for an exactly-zero factor
    lg += std::log(f);
  }
  return std::exp(lg);
}

std::complex<double> factor_product(const FactorTables& t, double time) {
  std::complex<double> nu(1.0, 0.0);
  const size_t nm = t.eps_e.size();
  for (size_t m = 0; m < nm; ++m) {
    const double se = std::sin(t.eps_e[m] * time);
    const double ce = std::cos(t.eps_e[m] * time);
    const double sg = std::sin(t.eps_g[m] * time);
    const double cg = std::cos(t.eps_g[m] * time);
    // e^{-i eps_g t} (cos eps_e t + i cos 2a sin eps_e t)
    const std::complex<double> pair(ce, t.cos_2a[m] * se);
    nu *= std::complex<double>(cg, -sg) * pair;
  }
  return nu;
}

void require_nonnegative_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be >= 0, got " + std::to_string(t));
}

}  // namespace

double loschmidt_echo(const ModeSpectrum& spectrum, double t) {
  require_nonnegative_time(t);
  return echo_at(factor_tables(spectrum), t);
}

std::complex<double> decoherence_factor(const ModeSpectrum& spectrum, double t) {
  require_nonnegative_time(t);
  return factor_product(factor_tables(spectrum), t);
}

double purity(double echo) {
  if (!(echo >= -1e-12) || !(echo <= 1.0 + 1e-12))
    throw DomainError("echo must lie in [0, 1], got " + std::to_string(echo));
  const double l = std::min(1.0, std::max(0.0, echo));
  return 0.5 * (1.0 + l);
}

QubitState QubitState::pure(std::complex<double> c_g, std::complex<double> c_e) {
  const double n2 = std::norm(c_g) + std::norm(c_e);
  if (!(n2 > 0.0)) throw DomainError("pure state needs a nonzero amplitude vector");
  const double inv = 1.0 / std::sqrt(n2);
  c_g *= inv;
  c_e *= inv;
  QubitState q;
  q.rho(0, 0) = std::norm(c_g);
  q.rho(0, 1) = c_g * std::conj(c_e);
  q.rho(1, 0) = c_e * std::conj(c_g);
  q.rho(1, 1) = std::norm(c_e);
  return q;
}

QubitState QubitState::equatorial(double azimuth) {
  const std::complex<double> phase(std::cos(azimuth), std::sin(azimuth));
  return pure(1.0, phase);
}

Eigen::Vector3d QubitState::bloch() const {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
          (rho(0, 0) - rho(1, 1)).real()};
}

void QubitState::validate(double tol) const {
  if (std::abs(rho(0, 1) - std::conj(rho(1, 0))) > tol ||
      std::abs(rho(0, 0).imag()) > tol || std::abs(rho(1, 1).imag()) > tol)
    throw PhysicalityError("density matrix is not Hermitian");
  if (std::abs((rho(0, 0) + rho(1, 1)).real() - 1.0) > tol)
    throw PhysicalityError("density matrix trace differs from 1");
  if (bloch().norm() > 1.0 + tol)
    throw PhysicalityError("Bloch vector leaves the unit ball");
}

QubitState exact_qubit_state(const QubitState& initial, std::complex<double> nu) {
  if (std::abs(nu) > 1.0 + 1e-12)
    throw PhysicalityError("|nu| = " + std::to_string(std::abs(nu)) +
                           " exceeds 1; upstream echo computation is broken");
  QubitState out = initial;
  out.rho(1, 0) = initial.rho(1, 0) * nu;  // <e|rho|g> picks up nu
  out.rho(0, 1) = std::conj(out.rho(1, 0));
  return out;
}

double nyquist_dt_bound(const ModeSpectrum& spectrum) {
  const double mx = spectrum.max_eps_e();
  if (!(mx > 0.0)) throw DomainError("spectrum has no positive eps_e");
  return std::numbers::pi / (10.0 * mx);
}

std::vector<double> unwrap_phase(const std::vector<std::complex<double>>& nu) {
  std::vector<double> phi(nu.size(), 0.0);
  if (nu.empty()) return phi;
  phi[0] = std::arg(nu[0]);
  for (size_t i = 1; i < nu.size(); ++i) {
    const std::complex<double> r = nu[i] * std::conj(nu[i - 1]);
    phi[i] = phi[i - 1] + ((r == std::complex<double>(0.0, 0.0)) ? 0.0 : std::arg(r));
  }
  return phi;
}

namespace {

void check_grid_against_spectrum(const ModeSpectrum& sp, const TimeGrid& grid) {
  grid.validate();
  const double bound = nyquist_dt_bound(sp);
  if (grid.dt > bound * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "time step dt=" << grid.dt << " exceeds the Nyquist bound pi/(10 max eps_e)="
        << bound << "; refine the grid";
    throw GridError(msg.str());
  }
}

}  // namespace

std::vector<double> echo_values(const ModeSpectrum& spectrum, const TimeGrid& grid) {
  check_grid_against_spectrum(spectrum, grid);
  const FactorTables tables = factor_tables(spectrum);
  std::vector<double> out(static_cast<size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i)
    out[static_cast<size_t>(i)] = echo_at(tables, grid.time(i));
  return out;
}

DecoherenceSeries echo_series(const ModeSpectrum& spectrum, const TimeGrid& grid) {
  check_grid_against_spectrum(spectrum, grid);
  const FactorTables tables = factor_tables(spectrum);
  DecoherenceSeries out;
  out.grid = grid;
  out.nu.resize(static_cast<size_t>(grid.n_points));
  out.echo.resize(static_cast<size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const double t = grid.time(i);
    const std::complex<double> nu = factor_product(tables, t);
    out.nu[static_cast<size_t>(i)] = nu;
    // keep L = |nu|^2 exactly; fall back to the log-space product on underflow
    const double l2 = std::norm(nu);
    out.echo[static_cast<size_t>(i)] = (l2 > kUnderflowGuard) ? l2 : echo_at(tables, t);
  }
  out.phase = unwrap_phase(out.nu);
  return out;
}

DecoherenceSeries echo_series(const ChainConfig& config, const TimeGrid& grid) {
  return echo_series(mode_spectrum(config), grid);
}

}  // namespace loschmidt
