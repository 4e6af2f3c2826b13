#include <vdlax/cli.hpp>
#include <vdlax/config.hpp>
#include <vdlax/correspondence.hpp>
#include <vdlax/errors.hpp>
#include <vdlax/report.hpp>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace vdlax;

namespace
{

RunConfig config_from(const std::string &text)
{
    return text.empty() ? RunConfig{} : parse_config(text);
}

std::string report_json(const VerificationReport &rep, const std::string &command, const std::string &nc)
{
    return dump_json(report_to_json(rep, command, nc));
}

NegativeControl control_from(const std::string &name)
{
    if (name == "none") {
        return NegativeControl::none;
    }
    if (name == "wrong_k") {
        return NegativeControl::wrong_k;
    }
    if (name == "special_gamma_perturbed") {
        return NegativeControl::special_gamma_perturbed;
    }
    throw ConfigError("unknown negative control '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_vdlax, m)
{
    m.doc() = "Theta-function kernels and the Lax pair / van Diejen correspondence checks";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<PoleProximity>(m, "PoleProximity", base.ptr());
    py::register_exception<DegenerateParameters>(m, "DegenerateParameters", base.ptr());
    py::register_exception<TruncationFailure>(m, "TruncationFailure", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());

    py::class_<ModularParams>(m, "ModularParams")
        .def(py::init([](double r, double a_plus, double a_minus) { return ModularParams(r, a_plus, a_minus); }),
             py::arg("r"), py::arg("a_plus"), py::arg("a_minus"))
        .def_property_readonly("r", &ModularParams::r)
        .def_property_readonly("a_plus", &ModularParams::a_plus)
        .def_property_readonly("a_minus", &ModularParams::a_minus)
        .def_property_readonly("p", &ModularParams::p)
        .def_property_readonly("q", &ModularParams::q);

    m.def("r_plus", &r_plus, py::arg("mp"), py::arg("x"));
    m.def("r_minus", &r_minus, py::arg("mp"), py::arg("x"));
    m.def("r_plus_logderiv", &r_plus_logderiv, py::arg("mp"), py::arg("x"));
    m.def("bracket", &bracket, py::arg("mp"), py::arg("z"));
    m.def("elliptic_gamma_pq", &elliptic_gamma_pq, py::arg("mp"), py::arg("z"));
    m.def("elliptic_gamma_G", &elliptic_gamma_G, py::arg("mp"), py::arg("x"));
    m.def("vb", &vb, py::arg("mp"), py::arg("gamma"), py::arg("x"));
    m.def("shift_V", &shift_V, py::arg("mp"), py::arg("gamma"), py::arg("x"));

    m.def(
        "Z", [](const std::string &config, cplx x) {
            const auto cc = config_from(config).correspondence;
            return Z_fn(cc.mp, cc.couplings, derive_lax_params(cc.mp, cc.couplings), x);
        },
        py::arg("config") = "", py::arg("x"));

    m.def("default_config", [] { return serialize_config(RunConfig{}); });
    m.def("normalize_config", [](const std::string &text) { return serialize_config(parse_config(text)); });

    m.def(
        "selfcheck",
        [](const std::string &config) {
            const auto cc = config_from(config).correspondence;
            return report_json(selfcheck(cc.mp, cc.tolerances), "selfcheck", "none");
        },
        py::arg("config") = "");
    m.def(
        "verify",
        [](const std::string &config, const std::string &nc) {
            return report_json(verify(config_from(config).correspondence, control_from(nc)), "verify", nc);
        },
        py::arg("config") = "", py::arg("negative_control") = "none");
    m.def(
        "residues",
        [](const std::string &config) {
            return report_json(residue_checks(config_from(config).correspondence), "residues", "none");
        },
        py::arg("config") = "");
    m.def(
        "sweep",
        [](const std::string &config, std::vector<double> phi1) {
            const auto cfg = config_from(config);
            if (phi1.empty()) {
                phi1 = cfg.sweep.values();
            }
            return sweep_csv(sweep_phi1(cfg.correspondence, phi1));
        },
        py::arg("config") = "", py::arg("phi1") = std::vector<double>{});

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
