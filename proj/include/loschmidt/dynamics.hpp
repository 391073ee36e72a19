#pragma once

#include <cstdint>

#include "loschmidt/echo.hpp"

namespace loschmidt {

// Time-local master-equation coefficients on the series grid:
//   d rho/dt = i Lambda(t) [sigma_z, rho] + gamma(t) (sigma_z rho sigma_z - rho)
// with gamma = -L'/(4L) and Lambda = -phi'/2.
struct RateSeries {
  TimeGrid grid;
  std::vector<double> gamma;
  std::vector<double> lamb;
  std::vector<std::uint8_t> clamped;  // 1 where an echo factor < 1e-12 forced a clamp
};

// analytic mode sum: gamma(t) = (1/4) sum_k sin^2(2 alpha_k) eps^e_k sin(2 eps^e_k t) / f_k,
// f_k = 1 - sin^2(2 alpha_k) sin^2(eps^e_k t). Values clamped to +-1e6 on flagged points.
std::vector<double> dephasing_rate(const DecoherenceSeries& series,
                                   const ModeSpectrum& spectrum,
                                   std::vector<std::uint8_t>* clamped_out = nullptr);

// Lambda = -phi'/2 by central finite differences, one-sided at the endpoints
std::vector<double> lamb_shift(const DecoherenceSeries& series);

RateSeries rate_series(const DecoherenceSeries& series, const ModeSpectrum& spectrum);

// fixed-step RK4 on the rate grid, rates interpolated linearly at half-steps
std::vector<QubitState> evolve_master_equation(const QubitState& initial,
                                               const RateSeries& rates);

}  // namespace loschmidt
