#include "noisemod/bep.hpp"
#include "noisemod/config.hpp"
#include "noisemod/csv.hpp"
#include "noisemod/detector.hpp"
#include "noisemod/engine.hpp"
#include "noisemod/errors.hpp"
#include "noisemod/harvest.hpp"
#include "noisemod/mathcore.hpp"
#include "noisemod/waveform.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using noisemod::Experiment;

nlohmann::json from_python(const py::object& obj)
{
    if (obj.is_none())
        return nlohmann::json::object();
    const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return nlohmann::json::parse(text);
}

py::object to_python(const nlohmann::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

py::dict sweep_to_dict(const noisemod::SweepResult& r)
{
    py::dict curves;
    for (const auto& c : r.curves) {
        std::vector<double> axis, est, se;
        std::vector<std::uint64_t> trials, errors;
        std::vector<bool> ok;
        for (const auto& p : c.points) {
            axis.push_back(p.axis_value);
            est.push_back(p.estimate);
            se.push_back(p.standard_error);
            trials.push_back(p.trial_count);
            errors.push_back(p.error_count);
            ok.push_back(p.ok);
        }
        curves[py::str(c.label)] = py::dict("axis_values"_a = axis, "estimate"_a = est, "standard_error"_a = se,
                                            "trials"_a = trials, "errors"_a = errors, "ok"_a = ok);
    }
    return py::dict("axis"_a = r.axis_name, "curves"_a = curves, "metadata"_a = to_python(r.metadata));
}

noisemod::LinkBudget make_budget(double m, double sigma_x2, double sigma_w2, int n_info, double loss_l,
                                 double k_factor)
{
    noisemod::LinkBudget b{m, sigma_x2, sigma_w2, n_info, loss_l, k_factor};
    b.validate();
    return b;
}

noisemod::BaselineScheme parse_scheme(const std::string& name)
{
    for (auto s : {noisemod::BaselineScheme::BPSK, noisemod::BaselineScheme::PSK16, noisemod::BaselineScheme::QAM16,
                   noisemod::BaselineScheme::RG, noisemod::BaselineScheme::CSCG})
        if (noisemod::to_string(s) == name)
            return s;
    throw noisemod::DomainError("unknown baseline scheme '" + name + "' (bpsk, psk16, qam16, rg, cscg)");
}

} // namespace

PYBIND11_MODULE(noisemod, m)
{
    m.doc() = "Mean-keyed noise modulation: closed-form BEP, rectenna model and Monte Carlo sweeps";

    py::register_exception<noisemod::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<noisemod::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<noisemod::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    m.attr("__version__") = NOISEMOD_VERSION;
    m.attr("RNG_ALGORITHM") = noisemod::kRngAlgorithm;

    m.def("gaussian_q", &noisemod::gaussian_q, "x"_a, "Gaussian tail probability Q(x)");
    m.def("bessel_i0", &noisemod::bessel_i0, "x"_a);
    m.def("bessel_i0_scaled", &noisemod::bessel_i0_scaled, "x"_a, "exp(-|x|) I0(x)");

    m.def(
        "path_loss",
        [](double d, double fc, double c) { return noisemod::path_loss({d, fc, c}); }, "distance_m"_a,
        "carrier_hz"_a = 433.0e6, "light_speed"_a = noisemod::kDefaultLightSpeed);
    m.def(
        "rician_shape",
        [](double k) {
            const auto s = noisemod::rician_shape(k);
            return py::make_tuple(s.s, s.sigma_s);
        },
        "k_factor"_a, "returns (s, sigma_s)");

    py::class_<noisemod::LinkBudget>(m, "LinkBudget")
        .def(py::init(&make_budget), "m"_a = 0.70710678118654752, "sigma_x2"_a = 1.0, "sigma_w2"_a = 1.0,
             "n_info"_a = 90, "loss_l"_a = 1.0, "k_factor"_a = 5.0)
        .def_readwrite("m", &noisemod::LinkBudget::mean_mag)
        .def_readwrite("sigma_x2", &noisemod::LinkBudget::sigma_x2)
        .def_readwrite("sigma_w2", &noisemod::LinkBudget::sigma_w2)
        .def_readwrite("n_info", &noisemod::LinkBudget::n_info)
        .def_readwrite("loss_l", &noisemod::LinkBudget::loss_l)
        .def_readwrite("k_factor", &noisemod::LinkBudget::k_factor)
        .def_property_readonly("delta", &noisemod::LinkBudget::delta);

    m.def("conditional_bep", &noisemod::conditional_bep, "r"_a, "budget"_a);
    m.def("scaled_rician_pdf", &noisemod::scaled_rician_pdf, "r"_a, "budget"_a);
    m.def("truncation_bound", &noisemod::truncation_bound, "budget"_a, "mass_tol"_a = noisemod::kDefaultTailMass);
    m.def("bep_error_floor", &noisemod::bep_error_floor, "budget"_a);
    m.def(
        "analytical_bep",
        [](const noisemod::LinkBudget& b, double abs_tol, double rel_tol, int max_subdivisions) {
            return noisemod::analytical_bep(b, {abs_tol, rel_tol, max_subdivisions}).value;
        },
        "budget"_a, "abs_tol"_a = 1e-12, "rel_tol"_a = 1e-9, "max_subdivisions"_a = 1000);

    m.def(
        "theoretical_moments",
        [](const std::string& scheme) {
            const auto mo = noisemod::theoretical_moments(parse_scheme(scheme));
            return py::make_tuple(mo.second, mo.fourth);
        },
        "scheme"_a, "(E|x|^2, E|x|^4) of a unit-power baseline scheme");
    m.def(
        "noisemod_moments",
        [](double mm, double sigma_x2) {
            const auto mo = noisemod::theoretical_moments(noisemod::NoiseModParams{mm, sigma_x2, 1, 0});
            return py::make_tuple(mo.second, mo.fourth);
        },
        "m"_a, "sigma_x2"_a);
    m.def(
        "z_dc_analytic",
        [](double m2, double m4, double k2, double k4, double r_ant) {
            return noisemod::z_dc_analytic(m2, m4, {k2, k4, r_ant});
        },
        "second_moment"_a, "fourth_moment"_a, "k2"_a = 0.0034, "k4"_a = 0.3829, "r_ant"_a = 50.0);
    m.def(
        "z_dc_empirical",
        [](const std::vector<std::complex<double>>& y, double k2, double k4, double r_ant) {
            return noisemod::z_dc_empirical(y, {k2, k4, r_ant});
        },
        "y"_a, "k2"_a = 0.0034, "k4"_a = 0.3829, "r_ant"_a = 50.0);
    m.def(
        "ts_partition",
        [](int n_total, double alpha) {
            const auto p = noisemod::ts_partition(n_total, alpha);
            return py::make_tuple(p.n_energy, p.n_info);
        },
        "n_total"_a, "alpha"_a, "returns (n_energy, n_info)");

    m.def(
        "sample_mean", [](const std::vector<std::complex<double>>& y) { return noisemod::sample_mean(y); }, "y"_a);
    m.def(
        "detect_bit",
        [](std::complex<double> y_mean, std::complex<double> h_est, double mm) {
            const auto d = noisemod::detect_bit(y_mean, h_est, mm);
            return py::make_tuple(d.bit, d.metric_low, d.metric_high);
        },
        "y_mean"_a, "h_est"_a, "m"_a, "returns (bit, metric_low, metric_high)");

    m.def(
        "run_ber_sweep",
        [](const py::object& config, int threads) {
            const auto cfg = noisemod::parse_config(from_python(config), Experiment::Ber);
            noisemod::SweepResult r;
            {
                py::gil_scoped_release release;
                r = noisemod::run_ber_sweep(cfg, {threads});
            }
            return sweep_to_dict(r);
        },
        "config"_a = py::none(), "threads"_a = 1, "Monte Carlo BER sweep; config uses the CLI JSON schema");
    m.def(
        "run_theory_curve",
        [](const py::object& config) {
            const auto cfg = noisemod::parse_config(from_python(config), Experiment::Theory);
            return sweep_to_dict(noisemod::run_theory_curve(cfg));
        },
        "config"_a = py::none());
    m.def(
        "run_eh_sweep",
        [](const py::object& config, int threads) {
            const auto cfg = noisemod::parse_config(from_python(config), Experiment::Eh);
            noisemod::SweepResult r;
            {
                py::gil_scoped_release release;
                r = noisemod::run_eh_sweep(cfg, {threads});
            }
            return sweep_to_dict(r);
        },
        "config"_a = py::none(), "threads"_a = 1);
    m.def(
        "validate_config",
        [](const py::object& config, const std::string& experiment) {
            const Experiment kind = experiment == "eh"       ? Experiment::Eh
                                    : experiment == "theory" ? Experiment::Theory
                                                             : Experiment::Ber;
            return noisemod::validate_config(noisemod::parse_config(from_python(config), kind), kind);
        },
        "config"_a = py::none(), "experiment"_a = "ber", "list of violated invariants (empty when valid)");
}
