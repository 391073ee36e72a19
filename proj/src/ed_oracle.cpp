#include "loschmidt/ed_oracle.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace loschmidt {

DenseHamiltonian build_hamiltonian(int n_spins, double field, double j) {
  if (n_spins < 2) throw ConfigError("dense Hamiltonian needs n_spins >= 2");
  if (n_spins > kDenseSpinCap)
    throw ResourceError("dense Hamiltonian capped at n_spins <= " +
                        std::to_string(kDenseSpinCap) + ", got " + std::to_string(n_spins));
  if (!(j > 0.0)) throw ConfigError("J must be positive");
  const int dim = 1 << n_spins;
  DenseHamiltonian out;
  out.n_spins = n_spins;
  out.h = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int site = 0; site < n_spins; ++site) {
      const int z1 = ((s >> site) & 1) ? -1 : 1;
      const int z2 = ((s >> ((site + 1) % n_spins)) & 1) ? -1 : 1;
      diag += -j * z1 * z2;  // literal periodic sum; a 2-ring counts its bond twice
    }
    out.h(s, s) = diag;
    for (int site = 0; site < n_spins; ++site) out.h(s ^ (1 << site), s) += field;
  }
  return out;
}

GroundState ground_state(const DenseHamiltonian& h) {
  if (h.n_spins < 2 || h.h.rows() != (1 << h.n_spins))
    throw ConfigError("malformed dense Hamiltonian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.h);
  GroundState g;
  g.energy = es.eigenvalues()(0);
  g.vector = es.eigenvectors().col(0);
  g.degenerate = (es.eigenvalues()(1) - es.eigenvalues()(0)) < 1e-10;
  // deterministic phase: first amplitude above threshold made real positive
  for (int i = 0; i < g.vector.size(); ++i) {
    if (std::abs(g.vector(i)) > 1e-12) {
      if (g.vector(i) < 0.0) g.vector = -g.vector;
      break;
    }
  }
  return g;
}

std::vector<double> even_sector_spectrum(const DenseHamiltonian& h) {
  const int dim = 1 << h.n_spins;
  const int mask = dim - 1;
  // spin-flip parity P = prod sigma^x maps |s> -> |s ^ mask>; the +1 block is
  // spanned by (|s> + |s_bar>)/sqrt(2) over orbits s < s_bar (no fixed points)
  std::vector<int> reps;
  reps.reserve(static_cast<size_t>(dim / 2));
  for (int s = 0; s < dim; ++s)
    if (s < (s ^ mask)) reps.push_back(s);
  const int d = static_cast<int>(reps.size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(dim, d);
  const double inv = 1.0 / std::sqrt(2.0);
  for (int c = 0; c < d; ++c) {
    q(reps[static_cast<size_t>(c)], c) = inv;
    q(reps[static_cast<size_t>(c)] ^ mask, c) = inv;
  }
  const Eigen::MatrixXd heven = q.transpose() * h.h * q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(heven);
  std::vector<double> out(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
  return out;
}

namespace {

// H restricted to the spin-flip-parity +1 block, assembled directly in the
// pair basis (|s> + |s_bar>)/sqrt(2), s < s_bar: sigma^x_j maps one pair state
// to another with unit amplitude, the bond term stays diagonal
Eigen::MatrixXd build_even_block(int n_spins, double field, double j) {
  const unsigned dim = 1u << n_spins;
  const unsigned mask = dim - 1;
  std::vector<int> index(dim, -1);
  std::vector<unsigned> reps;
  reps.reserve(dim / 2);
  for (unsigned s = 0; s < dim; ++s) {
    if (s < (s ^ mask)) {
      index[s] = static_cast<int>(reps.size());
      index[s ^ mask] = index[s];
      reps.push_back(s);
    }
  }
  const int d = static_cast<int>(reps.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const unsigned s = reps[static_cast<size_t>(a)];
    double diag = 0.0;
    for (int site = 0; site < n_spins; ++site) {
      const int z1 = ((s >> site) & 1u) ? -1 : 1;
      const int z2 = ((s >> ((site + 1) % n_spins)) & 1u) ? -1 : 1;
      diag += -j * z1 * z2;
      h(index[s ^ (1u << site)], a) += field;
    }
    h(a, a) += diag;
  }
  return h;
}

}  // namespace

DecoherenceSeries oracle_echo(int n_spins, double lambda, double delta, double j,
                              const TimeGrid& grid) {
  if (n_spins < 2) throw ConfigError("oracle echo needs n_spins >= 2");
  if (n_spins > kOracleSpinCap)
    throw ResourceError("oracle echo capped at n_spins <= " +
                        std::to_string(kOracleSpinCap) + ", got " + std::to_string(n_spins));
  if (!(j > 0.0)) throw ConfigError("J must be positive");
  grid.validate();
  // both branches conserve spin-flip parity and |Phi> is the parity-even
  // ground state, so everything lives in the +1 block
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(build_even_block(n_spins, lambda, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ee(
      build_even_block(n_spins, lambda + delta, j));
  const Eigen::VectorXd phi = eg.eigenvectors().col(0);
  const double e0 = eg.eigenvalues()(0);
  // <Phi| e^{+i Hg t} = e^{+i E0 t} <Phi|, so only the excited-branch
  // decomposition enters: nu(t) = e^{i E0 t} sum_m <m_e|Phi>^2 e^{-i we_m t}
  const Eigen::VectorXd c = ee.eigenvectors().transpose() * phi;
  const Eigen::VectorXd we = ee.eigenvalues();
  const int dim = static_cast<int>(we.size());

  DecoherenceSeries out;
  out.grid = grid;
  out.nu.resize(static_cast<size_t>(grid.n_points));
  out.echo.resize(static_cast<size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const double t = grid.time(i);
    double sr = 0.0, si = 0.0;
    for (int m = 0; m < dim; ++m) {
      const double w = c(m) * c(m);
      sr += w * std::cos(we(m) * t);
      si -= w * std::sin(we(m) * t);
    }
    const std::complex<double> nu =
        std::complex<double>(std::cos(e0 * t), std::sin(e0 * t)) *
        std::complex<double>(sr, si);
    out.nu[static_cast<size_t>(i)] = nu;
    out.echo[static_cast<size_t>(i)] = std::norm(nu);
  }
  out.phase = unwrap_phase(out.nu);
  return out;
}

}  // namespace loschmidt
