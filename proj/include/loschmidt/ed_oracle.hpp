#pragma once

#include <Eigen/Dense>

#include "loschmidt/echo.hpp"

namespace loschmidt {

inline constexpr int kDenseSpinCap = 14;   // 2^14 x 2^14 dense matrices at most
inline constexpr int kOracleSpinCap = 12;  // routine overlap-evolution runs

// Dense ring Hamiltonian in the sigma^z product basis; real symmetric.
struct DenseHamiltonian {
  int n_spins = 0;
  Eigen::MatrixXd h;
};

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;   // first nonzero amplitude made real positive
  bool degenerate = false;  // gap to the first excited state < 1e-10
};

// -J sum_j sigma^z_j sigma^z_{j+1} (periodic, j = 1..n) + field sum_j sigma^x_j.
// The literal j = 1..n sum double-counts the single bond of a 2-ring.
DenseHamiltonian build_hamiltonian(int n_spins, double field, double j);

GroundState ground_state(const DenseHamiltonian& h);

// eigenvalues of the spin-flip parity (prod sigma^x) +1 block, ascending
std::vector<double> even_sector_spectrum(const DenseHamiltonian& h);

// nu(t) = <Phi| e^{i H_g t} e^{-i H_e t} |Phi> with |Phi> the ground state of
// H_g. The left exponential only contributes e^{i E0 t}, so nu(t) =
// e^{i E0 t} sum_m <m_e|Phi>^2 e^{-i E_m t} over the excited-branch spectrum;
// both solves run in the spin-flip-parity +1 block where |Phi> lives.
DecoherenceSeries oracle_echo(int n_spins, double lambda, double delta, double j,
                              const TimeGrid& grid);

}  // namespace loschmidt
