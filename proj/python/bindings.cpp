#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdbeam/benchmarks.hpp"
#include "fdbeam/commands.hpp"
#include "fdbeam/errors.hpp"
#include "fdbeam/model_io.hpp"
#include "fdbeam/reference.hpp"

namespace py = pybind11;
using namespace fdbeam;

namespace {

reference::StabilityModel stability_model(const std::string& s) {
    using M = reference::StabilityModel;
    if (s == "euler") return M::euler;
    if (s == "kirchhoff") return M::kirchhoff;
    if (s == "reissner") return M::reissner;
    if (s == "ziegler") return M::ziegler;
    if (s == "engesser") return M::engesser;
    throw InputError("unknown model '" + s + "'");
}

reference::Support support(const std::string& s) {
    using S = reference::Support;
    if (s == "clamped_one_end") return S::clamped_one_end;
    if (s == "simply_supported") return S::simply_supported;
    if (s == "clamped_both") return S::clamped_both;
    throw InputError("unknown support '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-difference geometrically exact planar beams";
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    m.def("cases", [] {
        std::vector<std::string> ids;
        for (const auto& c : bench::cases()) ids.push_back(c.id);
        return ids;
    });
    m.def("case_value", &bench::case_value, py::arg("case_id"), py::arg("segments"),
          "benchmark quantity of a built-in case");
    m.def("analytic_value", &bench::analytic_value, py::arg("case_id"));

    m.def("export_case", [](const std::string& id, int n) {
        return serialize_model(ModelFile{bench::build_case(id, n), bench::case_options(id)});
    }, py::arg("case_id"), py::arg("segments"));
    m.def("trace", [](const std::string& json) {
        std::ostringstream out;
        cli::cmd_trace(parse_model(json), out);
        return out.str();
    }, py::arg("model_json"), "per-step history CSV of a JSON model");

    m.def("fresnel", [](double x) {
        const auto v = reference::fresnel(x);
        return std::pair{v.c, v.s};
    });
    m.def("critical_compression", [](const std::string& model, double gamma, double h_over_L, const std::string& sup) {
        return reference::critical_compression(stability_model(model),
                                               reference::StabilityParams::rectangular(gamma, h_over_L, support(sup)));
    }, py::arg("model"), py::arg("gamma"), py::arg("h_over_L"), py::arg("support") = "clamped_both");
    m.def("critical_tension", [](double gamma, double h_over_L, const std::string& sup) {
        return reference::critical_tension_reissner(reference::StabilityParams::rectangular(gamma, h_over_L, support(sup)));
    }, py::arg("gamma"), py::arg("h_over_L"), py::arg("support") = "clamped_both");
}
