#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fermatzeta/error.hpp"
#include "fermatzeta/report.hpp"
#include "fermatzeta/zeta.hpp"

namespace py = pybind11;
using namespace fermatzeta;

namespace {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::gate: return "gate";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::verification: return "verification";
    }
    return "invalid_argument";
}

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

using U32 = std::vector<std::uint32_t>;

std::vector<PointCount> counts_for(const FamilyDescriptor& f, const FieldDescriptor& F, FqElem lambda,
                                   std::size_t extensions, unsigned jobs) {
    CountOptions opt;
    opt.jobs = jobs;
    std::vector<PointCount> out;
    for (std::size_t s = 1; s <= extensions; ++s) out.push_back(count_points(f, F, lambda, s, opt));
    return out;
}

ZetaReport run(const U32& w, std::uint32_t d, const U32& a, std::uint32_t p, std::uint32_t r, FqElem lambda,
               unsigned precision, std::size_t order, unsigned jobs, std::size_t extensions) {
    const auto f = FamilyDescriptor::make(w, d, a);
    const auto F = field_make(p, r);
    ZetaOptions opt;
    opt.precision = precision;
    opt.order = order;
    opt.jobs = jobs;
    auto report = compute_zeta(f, F, lambda, default_calibration(), opt);
    if (extensions) verify(report, counts_for(f, F, lambda, extensions, jobs));
    return report;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Zeta functions of monomial deformations of Fermat hypersurfaces";

    static py::exception<Error> error(m, "FermatZetaError");
    py::register_exception_translator([](std::exception_ptr ep) {
        try {
            if (ep) std::rethrow_exception(ep);
        } catch (const Error& e) {
            PyErr_SetObject(error.ptr(), py::make_tuple(kind_name(e.kind()), e.name(), e.what()).ptr());
        }
    });

    m.def("classes", [](const U32& w, std::uint32_t d, const U32& a) {
        return to_py(classes_to_json(FamilyDescriptor::make(w, d, a)));
    }, py::arg("weights"), py::arg("degree"), py::arg("deformation"));

    m.def("pf", [](const U32& w, std::uint32_t d, const U32& a) {
        return to_py(pf_to_json(FamilyDescriptor::make(w, d, a)));
    }, py::arg("weights"), py::arg("degree"), py::arg("deformation"));

    m.def("pf_latex", [](const U32& w, std::uint32_t d, const U32& a) {
        return pf_to_latex(FamilyDescriptor::make(w, d, a));
    }, py::arg("weights"), py::arg("degree"), py::arg("deformation"));

    m.def("zeta", [](const U32& w, std::uint32_t d, const U32& a, std::uint32_t p, std::uint32_t r, FqElem lambda,
                     unsigned precision, std::size_t order, unsigned jobs, bool telemetry) {
        nlohmann::json j;
        {
            py::gil_scoped_release release;
            j = report_to_json(run(w, d, a, p, r, lambda, precision, order, jobs, 0), telemetry);
        }
        return to_py(j);
    }, py::arg("weights"), py::arg("degree"), py::arg("deformation"), py::arg("p"), py::arg("r") = 1,
       py::arg("lam") = 0, py::arg("precision") = 0, py::arg("series_order") = 0, py::arg("jobs") = 1,
       py::arg("telemetry") = false);

    m.def("verify", [](const U32& w, std::uint32_t d, const U32& a, std::uint32_t p, std::uint32_t r, FqElem lambda,
                       std::size_t extensions, unsigned jobs) {
        nlohmann::json j;
        {
            py::gil_scoped_release release;
            j = report_to_json(run(w, d, a, p, r, lambda, 0, 0, jobs, extensions));
        }
        return to_py(j);
    }, py::arg("weights"), py::arg("degree"), py::arg("deformation"), py::arg("p"), py::arg("r") = 1,
       py::arg("lam") = 0, py::arg("extensions") = 1, py::arg("jobs") = 1);

    m.def("count", [](const U32& w, std::uint32_t d, const U32& a, std::uint32_t p, std::uint32_t r, FqElem lambda,
                      std::size_t extensions, unsigned jobs) {
        nlohmann::json j;
        {
            py::gil_scoped_release release;
            const auto f = FamilyDescriptor::make(w, d, a);
            const auto F = field_make(p, r);
            j = counts_to_json(f, F, lambda, counts_for(f, F, lambda, extensions, jobs));
        }
        return to_py(j);
    }, py::arg("weights"), py::arg("degree"), py::arg("deformation"), py::arg("p"), py::arg("r") = 1,
       py::arg("lam") = 0, py::arg("extensions") = 1, py::arg("jobs") = 1);

    m.def("calibrate", [] { return to_py(default_calibration().to_json()); });
}
