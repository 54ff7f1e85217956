#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcmetro/baseline.hpp"
#include "rcmetro/config.hpp"
#include "rcmetro/dicke.hpp"
#include "rcmetro/errors.hpp"
#include "rcmetro/fit.hpp"
#include "rcmetro/grwa.hpp"
#include "rcmetro/rcmap.hpp"
#include "rcmetro/sweep.hpp"
#include "rcmetro/thermal.hpp"
#include "rcmetro/units.hpp"

namespace py = pybind11;
using namespace rcmetro;

namespace {

py::dict snr_dict(const SnrPoint& s) {
    py::dict d;
    d["beta"] = s.beta;
    d["snr"] = s.snr;
    d["snr_weak"] = s.snr_weak;
    d["delta_snr"] = s.delta_snr;
    d["mean_jz"] = s.mean_jz;
    d["var_jz"] = s.var_jz;
    d["dmean_deps"] = s.dmean_deps;
    d["n_max"] = s.n_max;
    d["converged"] = s.converged;
    return d;
}

SnrOptions snr_options(const std::string& variance, const std::string& sector, double fd_step) {
    SnrOptions o;
    o.variance = parse_variance_estimator(variance);
    o.sectors = parse_sector_mode(sector);
    o.fd_step = fd_step;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Strong-coupling thermometry: exact, GRWA and Dicke-limit signal-to-noise ratios";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    (void)domain;

    py::class_<ProbeParams>(m, "ProbeParams")
        .def(py::init([](int n_spins, double epsilon, double omega, double g) {
                 return ProbeParams{n_spins, epsilon, omega, g};
             }),
             py::arg("n_spins") = 1, py::arg("epsilon") = 1.0, py::arg("omega") = 1.0, py::arg("g") = 0.0)
        .def_readwrite("n_spins", &ProbeParams::n_spins)
        .def_readwrite("epsilon", &ProbeParams::epsilon)
        .def_readwrite("omega", &ProbeParams::omega)
        .def_readwrite("g", &ProbeParams::g)
        .def("__repr__", [](const ProbeParams& p) {
            return "ProbeParams(n_spins=" + std::to_string(p.n_spins) + ", epsilon=" + std::to_string(p.epsilon) +
                   ", omega=" + std::to_string(p.omega) + ", g=" + std::to_string(p.g) + ")";
        });

    m.def(
        "weak_snr",
        [](int n, double eps, double beta) {
            const auto w = weak_snr(n, eps, beta);
            return py::dict(py::arg("mean_jz") = w.mean_jz, py::arg("var_jz") = w.var_jz, py::arg("snr") = w.snr);
        },
        py::arg("n_spins"), py::arg("epsilon"), py::arg("beta"));

    m.def(
        "thermal_observables",
        [](const ProbeParams& p, double beta, int n_max) {
            const auto o = thermal_observables(p, beta, n_max);
            return py::dict(py::arg("ln_z") = o.ln_z, py::arg("mean_jz") = o.mean_jz,
                            py::arg("mean_jz2") = o.mean_jz2, py::arg("var_jz") = o.var_jz,
                            py::arg("truncated") = o.truncated);
        },
        py::arg("params"), py::arg("beta"), py::arg("n_max"));

    m.def(
        "snr_exact",
        [](const ProbeParams& p, double beta, int n_max, const std::string& variance, const std::string& sector,
           double fd_step) { return snr_dict(snr_exact(p, beta, n_max, snr_options(variance, sector, fd_step))); },
        py::arg("params"), py::arg("beta"), py::arg("n_max"), py::arg("variance") = "operator",
        py::arg("sector") = "full", py::arg("fd_step") = 1e-4);

    m.def(
        "converge_nmax",
        [](const ProbeParams& p, double beta, const std::string& variance, int cap) {
            ConvergenceSettings cs;
            cs.cap = cap;
            const auto r = converge_nmax(p, beta, cs, snr_options(variance, "full", 1e-4));
            auto d = snr_dict(r.point);
            d["steps"] = r.steps;
            return d;
        },
        py::arg("params"), py::arg("beta"), py::arg("variance") = "operator", py::arg("cap") = 4096);

    m.def(
        "solve_lambda", [](double eps, double omega, double g) { return solve_lambda(eps, omega, g).lambda; },
        py::arg("epsilon"), py::arg("omega"), py::arg("g"));
    m.def("lambda_closed_form", &lambda_closed_form, py::arg("epsilon"), py::arg("omega"), py::arg("g"));

    m.def(
        "grwa_levels",
        [](const ProbeParams& p, int n_max, int two_j) {
            const double lam = solve_lambda(p.epsilon, p.omega, p.g).lambda;
            return grwa_levels(build_grwa_blocks(p, lam, n_max), two_j < 0 ? p.n_spins : two_j);
        },
        py::arg("params"), py::arg("n_max") = 40, py::arg("two_j") = -1);

    m.def(
        "critical_temperature",
        [](double eps, double omega, double gbar) { return critical_temperature({eps, omega, gbar, 1}); },
        py::arg("epsilon"), py::arg("omega"), py::arg("gbar"));

    m.def(
        "dicke_snr",
        [](double eps, double omega, double gbar, int n, double beta) {
            const auto s = dicke_snr({eps, omega, gbar, n}, beta);
            return py::dict(py::arg("phase") = to_string(s.phase), py::arg("eta") = s.eta,
                            py::arg("snr_per_n") = s.snr_per_n, py::arg("snr_weak_per_n") = s.snr_weak_per_n,
                            py::arg("delta_per_n") = s.delta_per_n);
        },
        py::arg("epsilon"), py::arg("omega"), py::arg("gbar"), py::arg("n_spins"), py::arg("beta"));

    m.def(
        "verify_equivalence",
        [](double gamma, double omega_c, double omega0, double g, const std::vector<double>& grid) {
            return verify_equivalence({gamma, omega_c}, omega0, g, grid).max_residual;
        },
        py::arg("gamma"), py::arg("omega_c"), py::arg("omega0"), py::arg("g"), py::arg("grid"));

    m.def(
        "convert_units",
        [](double eps_ghz, double omega_ghz, double g_ghz, double t_mk) {
            const auto d = units::convert_units(eps_ghz, omega_ghz, g_ghz, t_mk);
            return py::dict(py::arg("epsilon") = d.epsilon, py::arg("g") = d.g, py::arg("beta_omega") = d.beta_omega);
        },
        py::arg("epsilon_ghz"), py::arg("omega_ghz"), py::arg("g_ghz"), py::arg("temperature_mk"));

    m.def(
        "fit_scaling",
        [](const std::vector<double>& beta_omega, const std::vector<double>& snr, double lo, double hi) {
            const auto f = fit_scaling(beta_omega, snr, {lo, hi});
            return py::dict(py::arg("theta") = f.theta, py::arg("stderr") = f.stderr_theta,
                            py::arg("r_squared") = f.r_squared, py::arg("points") = f.points);
        },
        py::arg("beta_omega"), py::arg("snr"), py::arg("lo") = 20.0, py::arg("hi") = 60.0);

    m.def(
        "run_sweep_csv",
        [](const std::string& config_text, int jobs) {
            const auto cfg = parse_config(config_text);
            py::gil_scoped_release release;
            return run_sweep(cfg, jobs).table.to_csv();
        },
        py::arg("config_text"), py::arg("jobs") = 1, "Run a sweep from config text and return the CSV table.");
}
