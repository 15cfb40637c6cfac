#include "fasuav/bler_analytic.hpp"
#include "fasuav/config.hpp"
#include "fasuav/ee_optimizer.hpp"
#include "fasuav/error.hpp"
#include "fasuav/fas_correlation.hpp"
#include "fasuav/finite_blocklength.hpp"
#include "fasuav/montecarlo.hpp"
#include "fasuav/pipeline.hpp"
#include "fasuav/report.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace fasuav;

namespace {

double overall_bler(const SystemConfig& config)
{
    const CorrelationModel corr = make_correlation(config.fas, config.rank_tol);
    return average_bler(config, corr, derive_fbl(config.payload_bits, config.blocklength));
}

double floor_bler(const SystemConfig& config)
{
    const CorrelationModel corr = make_correlation(config.fas, config.rank_tol);
    return error_floor(config, corr, derive_fbl(config.payload_bits, config.blocklength));
}

McEstimate simulate(const SystemConfig& config, std::uint64_t trials, std::uint64_t seed)
{
    const CorrelationModel corr = make_correlation(config.fas, config.rank_tol);
    McConfig mc = config.mc;
    mc.trials = trials;
    mc.seed = seed;
    return mc_end_to_end(config, corr, derive_fbl(config.payload_bits, config.blocklength), mc);
}

}  // namespace

PYBIND11_MODULE(_fasuav, m)
{
    m.doc() = "Finite-blocklength BLER and energy efficiency for FAS-equipped UAV relays";

    // translators run newest first, so the subclass goes last
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Scenario>(m, "Scenario").value("rural", Scenario::rural).value("urban", Scenario::urban);
    py::enum_<GcqRule>(m, "GcqRule")
        .value("fejer", GcqRule::fejer)
        .value("sqrt_deweighted", GcqRule::sqrt_deweighted)
        .value("paper_literal", GcqRule::paper_literal);

    py::class_<FblParams>(m, "FblParams")
        .def_readonly("payload_bits", &FblParams::payload_bits)
        .def_readonly("blocklength", &FblParams::blocklength)
        .def_readonly("rate", &FblParams::rate)
        .def_readonly("tau", &FblParams::tau)
        .def_readonly("chi", &FblParams::chi)
        .def_readonly("rho_l", &FblParams::rho_l)
        .def_readonly("rho_h", &FblParams::rho_h);
    m.def("derive_fbl", &derive_fbl, py::arg("payload_bits"), py::arg("blocklength"));
    m.def("instantaneous_bler", &instantaneous_bler, py::arg("gamma"), py::arg("fbl"));
    m.def("piecewise_q", &piecewise_q, py::arg("gamma"), py::arg("fbl"));

    m.def("bessel_j0", &bessel_j0);
    py::class_<CorrelationModel>(m, "CorrelationModel")
        .def_readonly("eigenvalues", &CorrelationModel::eigenvalues)
        .def_readonly("n_eff", &CorrelationModel::n_eff)
        .def_readonly("lambda_sum", &CorrelationModel::lambda_sum);
    m.def(
        "make_correlation",
        [](int ports, double aperture, double rank_tol) { return make_correlation({ports, aperture}, rank_tol); },
        py::arg("ports"), py::arg("aperture"), py::arg("rank_tol") = kDefaultRankTolerance);

    m.def(
        "hop1_bler", [](const FblParams& f, int shape, double vartheta) { return hop1_bler(f, {shape, vartheta}); },
        py::arg("fbl"), py::arg("m"), py::arg("vartheta"));
    m.def(
        "hop2_bler",
        [](const FblParams& f, int shape, double vartheta, const std::vector<double>& lambdas) {
            return hop2_bler(f, shape, vartheta, lambdas);
        },
        py::arg("fbl"), py::arg("m"), py::arg("vartheta"), py::arg("lambdas"));
    m.def(
        "hop2_bler_asymptotic",
        [](const FblParams& f, int shape, double vartheta, const std::vector<double>& lambdas) {
            return hop2_bler_asymptotic(f, shape, vartheta, lambdas);
        },
        py::arg("fbl"), py::arg("m"), py::arg("vartheta"), py::arg("lambdas"));
    m.def(
        "trajectory_average",
        [](const std::function<double(double)>& f, int order, GcqRule rule) {
            return trajectory_average(f, order, rule);
        },
        py::arg("f"), py::arg("order"), py::arg("rule") = GcqRule::fejer);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def_readwrite("blocklength", &SystemConfig::blocklength)
        .def_readwrite("payload_bits", &SystemConfig::payload_bits)
        .def_readwrite("quadrature_order", &SystemConfig::quadrature_order)
        .def_property(
            "p2_dbm", [](const SystemConfig& c) { return watts_to_dbm(c.radio.p2); },
            [](SystemConfig& c, double v) { c.radio.p2 = dbm_to_watts(v); })
        .def_property(
            "p1_dbm", [](const SystemConfig& c) { return watts_to_dbm(c.radio.p1); },
            [](SystemConfig& c, double v) { c.radio.p1 = dbm_to_watts(v); })
        .def_property(
            "ports", [](const SystemConfig& c) { return c.fas.ports; },
            [](SystemConfig& c, int v) { c.fas.ports = v; })
        .def_property(
            "aperture", [](const SystemConfig& c) { return c.fas.aperture; },
            [](SystemConfig& c, double v) { c.fas.aperture = v; })
        .def_property(
            "altitude", [](const SystemConfig& c) { return c.placement.altitude; },
            [](SystemConfig& c, double v) { c.placement.altitude = v; })
        .def_property_readonly("scenario", [](const SystemConfig& c) { return c.scenario; })
        .def("emit", &emit_config)
        .def("hash", &config_hash);
    m.def("preset", &preset);
    m.def("parse_config", &parse_config);
    m.def("load_config", &load_config);

    m.def("average_bler", &overall_bler, "Heading-averaged end-to-end BLER");
    m.def("error_floor", &floor_bler);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("trials_used", &McEstimate::trials_used);
    m.def("simulate", &simulate, py::arg("config"), py::arg("trials") = 100000, py::arg("seed") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "energy_efficiency",
        [](double bler, double p2, int ports, int blocklength, const SystemConfig& c) {
            return energy_efficiency(bler, p2, ports, blocklength, c.payload_bits, c.ee);
        },
        py::arg("bler"), py::arg("p2"), py::arg("ports"), py::arg("blocklength"), py::arg("config"));
    m.def("causality_ok", [](int ports, int blocklength, const SystemConfig& c) {
        return causality_ok(ports, blocklength, c.ee);
    });

    py::class_<BisectionResult>(m, "BisectionResult")
        .def_readonly("feasible", &BisectionResult::feasible)
        .def_readonly("p_star", &BisectionResult::p_star)
        .def_readonly("bler", &BisectionResult::bler)
        .def_readonly("midpoint_calls", &BisectionResult::midpoint_calls);
    m.def(
        "min_power_bisection",
        [](const std::function<double(double)>& bler, double p_min, double p_max, double eps_th, double delta_db) {
            SearchSpace s;
            s.p_min = p_min;
            s.p_max = p_max;
            s.eps_th = eps_th;
            s.delta_db = delta_db;
            return min_power_bisection(s, bler);
        },
        py::arg("bler"), py::arg("p_min"), py::arg("p_max"), py::arg("eps_th"), py::arg("delta_db") = 0.01);

    m.def(
        "sweep",
        [](const SystemConfig& c, const std::string& variable, const std::vector<double>& grid,
           const std::vector<std::string>& estimators) { return run_sweep(c, {variable, grid, estimators}); },
        py::arg("config"), py::arg("variable"), py::arg("grid"), py::arg("estimators") = std::vector<std::string>{"closed"});
    m.def("inspect", &inspect, py::arg("config"), py::arg("theta") = 0.0);
    m.attr("__version__") = kVersion;
}
