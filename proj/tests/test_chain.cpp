#include <doctest.h>

#include <cmath>
#include <numbers>

#include "loschmidt/chain.hpp"
#include "loschmidt/time_grid.hpp"

using namespace loschmidt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("momentum grid: antiperiodic spacing and reflection symmetry") {
  const auto ks = momentum_grid(8);
  REQUIRE(ks.size() == 4);
  for (size_t i = 0; i < ks.size(); ++i)
    CHECK(ks[i] == doctest::Approx((2.0 * (i + 1) - 1.0) * kPi / 8.0).epsilon(1e-15));
  // k_j + k_{n/2+1-j} = pi pairs the grid around pi/2
  for (int n : {4, 6, 8, 10, 64, 1000}) {
    const auto grid = momentum_grid(n);
    REQUIRE(static_cast<int>(grid.size()) == n / 2);
    for (size_t i = 0; i < grid.size(); ++i) {
      CHECK(grid[i] > 0.0);
      CHECK(grid[i] < kPi);
      CHECK(grid[i] + grid[grid.size() - 1 - i] == doctest::Approx(kPi).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(momentum_grid(7), ConfigError);
  CHECK_THROWS_AS(momentum_grid(2), ConfigError);
}

TEST_CASE("dispersion: frozen value, edge behavior, domain checks") {
  // independently computed reference for k = pi/8, h = 0.5, J = 1
  CHECK(dispersion(kPi / 8.0, 0.5, 1.0) ==
        doctest::Approx(1.1421391640053558).epsilon(1e-14));
  // eps(k -> pi) -> 2J(h/J + 1); eps at criticality is 4J sin(k/2)
  CHECK(dispersion(kPi - 1e-9, 0.5, 1.0) == doctest::Approx(3.0).epsilon(1e-8));
  for (double k : {0.3, 1.0, 2.9})
    CHECK(dispersion(k, 1.0, 1.0) == doctest::Approx(4.0 * std::sin(k / 2.0)).epsilon(1e-13));
  // J rescales energy: eps(k, h, J) = J eps(k, h/J, 1)
  CHECK(dispersion(0.7, 1.2, 2.0) == doctest::Approx(2.0 * dispersion(0.7, 0.6, 1.0)));
  CHECK_THROWS_AS(dispersion(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(dispersion(kPi, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(dispersion(-0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(dispersion(0.5, 1.0, 0.0), DomainError);
}

TEST_CASE("bogoliubov angle: branch inside (0, pi/2), small-shift linearity") {
  for (double h : {0.2, 0.5, 1.0, 1.5})
    for (double k : momentum_grid(10)) {
      const double th = bogoliubov_angle(k, h, 1.0);
      CHECK(th > 0.0);
      CHECK(th < kPi / 2.0);
      // definition check: tan(2 theta) = sin k / (h - cos k)
      CHECK(std::tan(2.0 * th) * (h - std::cos(k)) == doctest::Approx(std::sin(k)).epsilon(1e-12));
    }
  // alpha = theta(h + delta) - theta(h) vanishes linearly in delta
  const double k = momentum_grid(8)[1];
  const double base = bogoliubov_angle(k, 0.8, 1.0);
  const double r1 = (bogoliubov_angle(k, 0.8 + 1e-4, 1.0) - base) / 1e-4;
  const double r2 = (bogoliubov_angle(k, 0.8 + 1e-6, 1.0) - base) / 1e-6;
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-3));
  CHECK(std::abs(r2) > 1e-3);  // nonzero slope: the ratio has converged
}

TEST_CASE("mode spectrum: both branches attached, alpha consistent") {
  const ChainConfig config{1.0, 0.5, 0.1, 8};
  const ModeSpectrum sp = mode_spectrum(config);
  REQUIRE(sp.modes.size() == 4);
  CHECK(sp.config.n_spins == 8);
  for (const Mode& m : sp.modes) {
    CHECK(m.eps_g == doctest::Approx(dispersion(m.k, 0.5, 1.0)));
    CHECK(m.eps_e == doctest::Approx(dispersion(m.k, 0.6, 1.0)));
    CHECK(m.alpha == doctest::Approx(m.theta_e - m.theta_g));
  }
  CHECK(sp.max_eps_e() == doctest::Approx(dispersion(sp.modes.back().k, 0.6, 1.0)));
  CHECK(config.lambda_star() == doctest::Approx(0.6));
}

TEST_CASE("chain config validation") {
  CHECK_THROWS_AS((ChainConfig{1.0, 0.5, 0.1, 7}.validate()), ConfigError);
  CHECK_THROWS_AS((ChainConfig{1.0, 0.5, 0.1, 2}.validate()), ConfigError);
  CHECK_THROWS_AS((ChainConfig{0.0, 0.5, 0.1, 8}.validate()), ConfigError);
  CHECK_THROWS_AS((ChainConfig{-1.0, 0.5, 0.1, 8}.validate()), ConfigError);
  CHECK_THROWS_AS((ChainConfig{1.0, std::nan(""), 0.1, 8}.validate()), ConfigError);
  CHECK_NOTHROW((ChainConfig{1.0, 0.5, 0.1, 8}.validate()));
  // negative and zero fields are legitimate environments
  CHECK_NOTHROW((ChainConfig{1.0, -0.3, 0.1, 8}.validate()));
  CHECK_NOTHROW((ChainConfig{1.0, 0.0, 0.01, 400}.validate()));
}

TEST_CASE("time grid: arithmetic and validation") {
  const TimeGrid g{0.0, 0.25, 5};
  CHECK(g.time(0) == 0.0);
  CHECK(g.time(4) == doctest::Approx(1.0));
  CHECK(g.t_end() == doctest::Approx(1.0));
  const auto ts = g.times();
  REQUIRE(ts.size() == 5);
  CHECK(ts[3] == doctest::Approx(0.75));
  CHECK(g == (TimeGrid{0.0, 0.25, 5}));
  CHECK_FALSE(g == (TimeGrid{0.0, 0.25, 6}));
  CHECK_THROWS_AS((TimeGrid{0.0, 0.0, 5}.validate()), GridError);
  CHECK_THROWS_AS((TimeGrid{0.0, -0.1, 5}.validate()), GridError);
  CHECK_THROWS_AS((TimeGrid{0.0, 0.1, 1}.validate()), GridError);
  CHECK_THROWS_AS((TimeGrid{-1.0, 0.1, 5}.validate()), GridError);
}
