#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cadence/harness.hpp"

namespace py = pybind11;
using namespace cadence;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steane-code QEC cadence simulator";

  py::register_exception<SimulationAbort>(m, "SimulationAbort");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("syndrome_of", [](unsigned bits) { return int(syndrome_of(ErrorPattern::from_bits(bits))); }, py::arg("bits"),
        "3-bit X syndrome of a 7-bit error pattern (bit q-1 is qubit q).");
  m.def("decode_syndrome", [](int s) { return decode_syndrome(static_cast<Syndrome>(s)).bits(); }, py::arg("syndrome"));
  m.def(
      "apply_ideal_qec",
      [](unsigned bits) {
        QecOutcome q = apply_ideal_qec(ErrorPattern::from_bits(bits));
        return py::make_tuple(q.residual.bits(), q.logical);
      },
      py::arg("bits"));

  py::class_<BitErrorRates>(m, "BitErrorRates")
      .def_readonly("eps_g", &BitErrorRates::eps_g)
      .def_readonly("eps_c", &BitErrorRates::eps_c)
      .def_readonly("eps_d", &BitErrorRates::eps_d);
  m.def("bit_error_rates", &bit_error_rates, py::arg("eps"));

  py::class_<AbstractRates>(m, "AbstractRates")
      .def(py::init([](double eps_g, double eps_a, double eps_s, double eps_o, double eps_c, double eps_d) {
             return AbstractRates{eps_g, eps_a, eps_s, eps_o, eps_c, eps_d};
           }),
           py::arg("eps_g") = 0.0, py::arg("eps_a") = 0.0, py::arg("eps_s") = 0.0, py::arg("eps_o") = 0.0,
           py::arg("eps_c") = 0.0, py::arg("eps_d") = 0.0)
      .def_readwrite("eps_g", &AbstractRates::eps_g)
      .def_readwrite("eps_a", &AbstractRates::eps_a)
      .def_readwrite("eps_s", &AbstractRates::eps_s)
      .def_readwrite("eps_o", &AbstractRates::eps_o)
      .def_readwrite("eps_c", &AbstractRates::eps_c)
      .def_readwrite("eps_d", &AbstractRates::eps_d);

  m.def("gamma", [](int B, double a) { return cadence::gamma(B, a); }, py::arg("B"), py::arg("eps_a"));
  m.def("gamma3", [](int B, double a) { return cadence::gamma3(B, a); }, py::arg("B"), py::arg("eps_a"));
  m.def(
      "pl_second_order", [](const AbstractRates& r, int N, int m) { return pl_second_order(r, {N, m}).value; },
      py::arg("rates"), py::arg("N"), py::arg("m"));
  m.def(
      "table_contributions",
      [](const AbstractRates& r, int N, int m) {
        py::list out;
        for (const TableTerm& t : table_contributions(r, {N, m}))
          out.append(py::make_tuple(t.table, t.row, t.label, t.value));
        return out;
      },
      py::arg("rates"), py::arg("N"), py::arg("m"));
  m.def(
      "pairwise_fault_oracle", [](const AbstractRates& r, int N, int m) { return pairwise_fault_oracle(r, {N, m}); },
      py::arg("rates"), py::arg("N"), py::arg("m"));
  m.def("d_over_c1", &d_over_c1, py::arg("rates"));
  m.def("m_min", &m_min, py::arg("rates"));
  m.def("grid_argmin", &grid_argmin, py::arg("rates"), py::arg("N"), py::arg("m_grid"));
  m.def(
      "rates_at",
      [](double s, double o, double c, double d, double eps_g, double eps_a) {
        return rates_at({s, o, c, d}, eps_g, eps_a);
      },
      py::arg("s"), py::arg("o"), py::arg("c"), py::arg("d"), py::arg("eps_g"), py::arg("eps_a") = 0.0);

  m.def(
      "estimate_pl_mc",
      [](int N, int m, double eps_g, double eps_a, std::uint64_t shots, std::uint64_t seed, const std::string& ancilla,
         int threads, int retry_cap) {
        TrajectoryConfig t;
        t.schedule = {N, m};
        t.eps_a = eps_a;
        t.noise = make_noise(1.5 * eps_g);
        t.shots = shots;
        t.seed = seed;
        t.ancilla = ancilla;
        t.retry_cap = retry_cap;
        McEstimate e;
        {
          py::gil_scoped_release release;
          e = estimate_pl_mc(t, threads);
        }
        py::dict d;
        d["shots"] = e.shots;
        d["failures"] = e.failures;
        d["p_hat"] = e.p_hat;
        d["ci_low"] = e.ci.low;
        d["ci_high"] = e.ci.high;
        return d;
      },
      py::arg("N"), py::arg("m"), py::arg("eps_g"), py::arg("eps_a") = 0.0, py::arg("shots") = 100000,
      py::arg("seed") = 1, py::arg("ancilla") = "plus_encoder", py::arg("threads") = 1,
      py::arg("retry_cap") = kDefaultRetryCap);

  m.def(
      "calibrate",
      [](const std::vector<double>& eps_g, std::uint64_t shots, std::uint64_t seed, const std::string& normalization,
         int threads) {
        CalibrationOptions o;
        o.shots = shots;
        o.seed = seed;
        o.threads = threads;
        CalibrationRecord rec;
        {
          py::gil_scoped_release release;
          rec = calibrate(eps_g, o, normalization_from_string(normalization));
        }
        return calibration_to_json(rec).dump();
      },
      py::arg("eps_g") = default_calibration_grid(), py::arg("shots") = 1000000, py::arg("seed") = 0,
      py::arg("normalization") = "per_qubit", py::arg("threads") = 1,
      "Runs the calibration micro-simulations; returns the JSON record as a string.");

  m.def(
      "sweep_csv",
      [](const std::string& config_json, int threads) {
        SweepConfig c = config_from_json(nlohmann::json::parse(config_json));
        std::string out;
        {
          py::gil_scoped_release release;
          out = sweep_csv(run_sweep(c, resolve_coefficients(c, threads), threads));
        }
        return out;
      },
      py::arg("config_json"), py::arg("threads") = 1);

  m.def("self_check", [] {
    py::list out;
    for (const CheckResult& r : run_self_checks()) out.append(py::make_tuple(r.name, r.passed, r.detail));
    return out;
  });
}
