// pybind11 surface for the core operations: spectra, echo series, master
// equation rates/evolution, non-Markovianity measures, sweeps, dense oracle.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loschmidt/sweep.hpp"

namespace py = pybind11;
using namespace loschmidt;

PYBIND11_MODULE(_core, m) {
  m.doc() = "central-qubit dephasing against a transverse-field Ising ring";

  // exception hierarchy; translators run last-registered-first, so register
  // the base before the leaves
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  static py::exception<ConfigError> exc_config(m, "ConfigError", PyExc_ValueError);
  static py::exception<GridError> exc_grid(m, "GridError", PyExc_ValueError);
  static py::exception<DomainError> exc_domain(m, "DomainError", PyExc_ValueError);
  static py::exception<PhysicalityError> exc_phys(m, "PhysicalityError", PyExc_ValueError);
  static py::exception<ResourceError> exc_res(m, "ResourceError", PyExc_RuntimeError);
  static py::exception<NotFoundError> exc_nf(m, "NotFoundError", PyExc_LookupError);
  static py::exception<AmbiguityError> exc_amb(m, "AmbiguityError", PyExc_LookupError);
  static py::exception<IoError> exc_io(m, "IoError", PyExc_OSError);
  py::register_exception_translator([](std::exception_ptr p) {
    if (!p) return;
    try {
      std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      exc_config(e.what());
    } catch (const GridError& e) {
      exc_grid(e.what());
    } catch (const DomainError& e) {
      exc_domain(e.what());
    } catch (const PhysicalityError& e) {
      exc_phys(e.what());
    } catch (const ResourceError& e) {
      exc_res(e.what());
    } catch (const NotFoundError& e) {
      exc_nf(e.what());
    } catch (const AmbiguityError& e) {
      exc_amb(e.what());
    } catch (const IoError& e) {
      exc_io(e.what());
    }
  });

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init([](double t0, double dt, int n_points) {
             TimeGrid g{t0, dt, n_points};
             g.validate();
             return g;
           }),
           py::arg("t0") = 0.0, py::arg("dt") = 0.0, py::arg("n_points") = 0)
      .def_readwrite("t0", &TimeGrid::t0)
      .def_readwrite("dt", &TimeGrid::dt)
      .def_readwrite("n_points", &TimeGrid::n_points)
      .def("time", &TimeGrid::time, py::arg("i"))
      .def("t_end", &TimeGrid::t_end)
      .def("times", &TimeGrid::times)
      .def("__eq__", [](const TimeGrid& a, const TimeGrid& b) { return a == b; })
      .def("__repr__", [](const TimeGrid& g) {
        return "TimeGrid(t0=" + std::to_string(g.t0) + ", dt=" + std::to_string(g.dt) +
               ", n_points=" + std::to_string(g.n_points) + ")";
      });

  py::class_<ChainConfig>(m, "ChainConfig")
      .def(py::init([](double j, double lambda, double delta, int n_spins) {
             return ChainConfig{j, lambda, delta, n_spins};
           }),
           py::arg("j") = 1.0, py::arg("lambda_") = 0.99, py::arg("delta") = 0.01,
           py::arg("n_spins") = 400)
      .def_readwrite("j", &ChainConfig::j)
      .def_readwrite("lambda_", &ChainConfig::lambda)
      .def_readwrite("delta", &ChainConfig::delta)
      .def_readwrite("n_spins", &ChainConfig::n_spins)
      .def("lambda_star", &ChainConfig::lambda_star)
      .def("validate", &ChainConfig::validate)
      .def("__repr__", [](const ChainConfig& c) {
        return "ChainConfig(j=" + std::to_string(c.j) + ", lambda_=" + std::to_string(c.lambda) +
               ", delta=" + std::to_string(c.delta) + ", n_spins=" + std::to_string(c.n_spins) +
               ")";
      });

  py::class_<Mode>(m, "Mode")
      .def_readonly("k", &Mode::k)
      .def_readonly("theta_g", &Mode::theta_g)
      .def_readonly("theta_e", &Mode::theta_e)
      .def_readonly("alpha", &Mode::alpha)
      .def_readonly("eps_g", &Mode::eps_g)
      .def_readonly("eps_e", &Mode::eps_e);

  py::class_<ModeSpectrum>(m, "ModeSpectrum")
      .def_readonly("config", &ModeSpectrum::config)
      .def_readonly("modes", &ModeSpectrum::modes)
      .def("max_eps_e", &ModeSpectrum::max_eps_e);

  py::class_<DecoherenceSeries>(m, "DecoherenceSeries")
      .def_readonly("grid", &DecoherenceSeries::grid)
      .def_readonly("nu", &DecoherenceSeries::nu)
      .def_readonly("echo", &DecoherenceSeries::echo)
      .def_readonly("phase", &DecoherenceSeries::phase);

  py::class_<QubitState>(m, "QubitState")
      .def(py::init([](const Eigen::Matrix2cd& rho) {
             QubitState s{rho};
             s.validate();
             return s;
           }),
           py::arg("rho"))
      .def_static("pure", &QubitState::pure, py::arg("c_g"), py::arg("c_e"))
      .def_static("equatorial", &QubitState::equatorial, py::arg("azimuth") = 0.0)
      .def_readwrite("rho", &QubitState::rho)
      .def("bloch", &QubitState::bloch)
      .def("validate", &QubitState::validate, py::arg("tol") = 1e-9);

  py::class_<RateSeries>(m, "RateSeries")
      .def_readonly("grid", &RateSeries::grid)
      .def_readonly("gamma", &RateSeries::gamma)
      .def_readonly("lamb", &RateSeries::lamb)
      .def_readonly("clamped", &RateSeries::clamped);

  py::class_<GrowthInterval>(m, "GrowthInterval")
      .def_readonly("a", &GrowthInterval::a)
      .def_readonly("b", &GrowthInterval::b)
      .def_readonly("echo_a", &GrowthInterval::echo_a)
      .def_readonly("echo_b", &GrowthInterval::echo_b);

  py::class_<NonMarkovianityReport>(m, "NonMarkovianityReport")
      .def_readonly("value", &NonMarkovianityReport::value)
      .def_readonly("intervals", &NonMarkovianityReport::intervals)
      .def_readonly("t_max", &NonMarkovianityReport::t_max)
      .def_readonly("n_grid_points", &NonMarkovianityReport::n_grid_points)
      .def_readonly("guard", &NonMarkovianityReport::guard)
      .def_readonly("truncation_warning", &NonMarkovianityReport::truncation_warning);

  py::class_<FisherSeries>(m, "FisherSeries")
      .def_readonly("grid", &FisherSeries::grid)
      .def_readonly("fisher", &FisherSeries::fisher)
      .def_readonly("flow", &FisherSeries::flow);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("n_spins", &SweepRow::n_spins)
      .def_readonly("lambda_star", &SweepRow::lambda_star)
      .def_readonly("blp", &SweepRow::blp)
      .def_readonly("t_max", &SweepRow::t_max)
      .def_readonly("n_intervals", &SweepRow::n_intervals)
      .def_readonly("min_gamma", &SweepRow::min_gamma)
      .def_readonly("error", &SweepRow::error);

  py::class_<SweepResult>(m, "SweepResult").def_readonly("rows", &SweepResult::rows);

  py::class_<CriticalPoint>(m, "CriticalPoint")
      .def_readonly("lambda_star", &CriticalPoint::lambda_star)
      .def_readonly("blp", &CriticalPoint::blp)
      .def_readonly("exact_zero", &CriticalPoint::exact_zero);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init([](double j, double delta, std::vector<int> n_values,
                       std::vector<double> lambda_star_values, double t_max, double dt,
                       int max_workers, std::string output) {
             return SweepSpec{j,  delta, std::move(n_values), std::move(lambda_star_values),
                              t_max, dt,    max_workers,          std::move(output)};
           }),
           py::arg("j") = 1.0, py::arg("delta") = 0.01,
           py::arg("n_values") = std::vector<int>{},
           py::arg("lambda_star_values") = std::vector<double>{}, py::arg("t_max") = 0.0,
           py::arg("dt") = 0.0, py::arg("max_workers") = 0, py::arg("output") = std::string())
      .def_readwrite("j", &SweepSpec::j)
      .def_readwrite("delta", &SweepSpec::delta)
      .def_readwrite("n_values", &SweepSpec::n_values)
      .def_readwrite("lambda_star_values", &SweepSpec::lambda_star_values)
      .def_readwrite("t_max", &SweepSpec::t_max)
      .def_readwrite("dt", &SweepSpec::dt)
      .def_readwrite("max_workers", &SweepSpec::max_workers)
      .def_readwrite("output", &SweepSpec::output)
      .def("validate", &SweepSpec::validate);

  py::class_<SeriesBundle>(m, "SeriesBundle")
      .def_readonly("spectrum", &SeriesBundle::spectrum)
      .def_readonly("series", &SeriesBundle::series)
      .def_readonly("rates", &SeriesBundle::rates)
      .def_readonly("fisher", &SeriesBundle::fisher)
      .def_readonly("report", &SeriesBundle::report);

  m.def("momentum_grid", &momentum_grid, py::arg("n_spins"));
  m.def("dispersion", &dispersion, py::arg("k"), py::arg("field"), py::arg("j") = 1.0);
  m.def("bogoliubov_angle", &bogoliubov_angle, py::arg("k"), py::arg("field"),
        py::arg("j") = 1.0);
  m.def("mode_spectrum", &mode_spectrum, py::arg("config"));

  m.def("loschmidt_echo", &loschmidt_echo, py::arg("spectrum"), py::arg("t"));
  m.def("decoherence_factor", &decoherence_factor, py::arg("spectrum"), py::arg("t"));
  m.def("purity", &purity, py::arg("echo"));
  m.def("exact_qubit_state", &exact_qubit_state, py::arg("initial"), py::arg("nu"));
  m.def("nyquist_dt_bound", &nyquist_dt_bound, py::arg("spectrum"));
  m.def("echo_values", &echo_values, py::arg("spectrum"), py::arg("grid"));
  m.def("unwrap_phase", &unwrap_phase, py::arg("nu"));
  m.def(
      "echo_series",
      [](const ModeSpectrum& s, const TimeGrid& g) { return echo_series(s, g); },
      py::arg("spectrum"), py::arg("grid"));
  m.def(
      "echo_series",
      [](const ChainConfig& c, const TimeGrid& g) { return echo_series(c, g); },
      py::arg("config"), py::arg("grid"));

  m.def(
      "dephasing_rate",
      [](const DecoherenceSeries& s, const ModeSpectrum& sp) {
        return dephasing_rate(s, sp);
      },
      py::arg("series"), py::arg("spectrum"));
  m.def("lamb_shift", &lamb_shift, py::arg("series"));
  m.def("rate_series", &rate_series, py::arg("series"), py::arg("spectrum"));
  m.def("evolve_master_equation", &evolve_master_equation, py::arg("initial"),
        py::arg("rates"));

  m.def("trace_distance", &trace_distance, py::arg("a"), py::arg("b"));
  m.def("blp_measure", &blp_measure, py::arg("series"), py::arg("t_max") = 0.0,
        py::arg("guard") = 0.0);
  m.def("rhp_entanglement_measure", &rhp_entanglement_measure, py::arg("series"),
        py::arg("t_max") = 0.0);
  m.def("fisher_flow", &fisher_flow, py::arg("series"), py::arg("rates"));
  m.def("squared_distance_flow", &squared_distance_flow, py::arg("series"));
  m.def("recurrence_time", &recurrence_time, py::arg("config"));
  m.def("default_t_max", &default_t_max, py::arg("config"));

  m.def("build_hamiltonian", &build_hamiltonian, py::arg("n_spins"), py::arg("field"),
        py::arg("j") = 1.0);
  m.def(
      "ground_state_energy",
      [](const DenseHamiltonian& h) { return ground_state(h).energy; }, py::arg("h"));
  m.def("even_sector_spectrum", &even_sector_spectrum, py::arg("h"));
  m.def("oracle_echo", &oracle_echo, py::arg("n_spins"), py::arg("lambda_"),
        py::arg("delta"), py::arg("j"), py::arg("grid"));

  m.def("lambda_star_range", &lambda_star_range, py::arg("lo"), py::arg("hi"),
        py::arg("step"));
  m.def("auto_dt", &auto_dt, py::arg("spectrum"));
  m.def("run_sweep", &run_sweep, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  m.def("detect_critical_point", &detect_critical_point, py::arg("result"),
        py::arg("n_spins"));
  m.def("compute_series", &compute_series, py::arg("config"), py::arg("t_max") = 0.0,
        py::arg("dt") = 0.0, py::arg("n_points") = 0);
  m.def("series_csv", &series_csv, py::arg("bundle"));
  m.def("sweep_csv", &sweep_csv, py::arg("result"));
  m.def(
      "oracle_csv",
      [](const ChainConfig& c, const TimeGrid& g) { return oracle_csv(c, g); },
      py::arg("config"), py::arg("grid"));
}
