#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qint/differential.hpp"
#include "qint/errors.hpp"
#include "qint/integrate.hpp"
#include "qint/json_io.hpp"
#include "qint/verify.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace qint;

namespace {

Rule rule_from_string(const std::string& rule) {
    if (rule == "left") return Rule::left;
    if (rule == "midpoint") return Rule::midpoint;
    throw py::value_error("rule must be 'left' or 'midpoint'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Differential and path integral of real-analytic functions of a quaternionic variable";

    auto base = py::register_exception<Error>(m, "QintError", PyExc_ValueError);
    py::register_exception<ZeroDivisorError>(m, "ZeroDivisorError", base.ptr());
    py::register_exception<DegenerateSlice>(m, "DegenerateSlice", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<Unsupported>(m, "Unsupported", base.ptr());
    py::register_exception<MissingReference>(m, "MissingReference", base.ptr());
    py::register_exception<SliceEscape>(m, "SliceEscape", base.ptr());
    py::register_exception<StepTooCoarse>(m, "StepTooCoarse", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    py::class_<Quaternion>(m, "Quaternion")
        .def(py::init<>())
        .def(py::init<double, double, double, double>(), py::arg("w"), py::arg("x1") = 0.0, py::arg("x2") = 0.0,
             py::arg("x3") = 0.0)
        .def_readwrite("w", &Quaternion::w)
        .def_readwrite("x1", &Quaternion::x1)
        .def_readwrite("x2", &Quaternion::x2)
        .def_readwrite("x3", &Quaternion::x3)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self * double())
        .def(double() * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("conj", [](const Quaternion& q) { return conj(q); })
        .def("inverse", [](const Quaternion& q) { return inverse(q); })
        .def("norm", &Quaternion::norm)
        .def("approx_eq", [](const Quaternion& a, const Quaternion& b, double tol) { return approx_eq(a, b, tol); },
             py::arg("other"), py::arg("tol") = 1e-10)
        .def("to_list", [](const Quaternion& q) { return std::vector<double>{q.w, q.x1, q.x2, q.x3}; })
        .def("__repr__", [](const Quaternion& q) { return "Quaternion(" + format_quaternion(q) + ")"; });

    py::class_<AnalyticFunction>(m, "AnalyticFunction")
        .def_static("from_json", [](const std::string& text) { return function_from_json(json::parse(text)); })
        .def_static("parse", &parse_function_spec, "JSON text or a shorthand like 'exp' or 'x^3'")
        .def_static("series", [](std::vector<double> coeffs, double radius) {
                return AnalyticFunction::series(std::move(coeffs), radius);
            },
            py::arg("coeffs"), py::arg("radius") = std::numeric_limits<double>::infinity())
        .def_static("monomial", [](unsigned n) { return AnalyticFunction::monomial(n); })
        .def_static("named", [](const std::string& name) { return parse_function_spec(name); })
        .def("__call__", [](const AnalyticFunction& F, const Quaternion& x) { return eval_function(F, x); })
        .def("derivative", [](const AnalyticFunction& F, const Quaternion& x) { return eval_derivative(F, x); })
        .def("is_entire", &AnalyticFunction::is_entire)
        .def("is_single_valued", &AnalyticFunction::is_single_valued)
        .def("to_json", [](const AnalyticFunction& F) { return to_json(F).dump(); })
        .def("__repr__", [](const AnalyticFunction& F) { return "AnalyticFunction(" + F.describe() + ")"; });

    py::class_<Path>(m, "Path")
        .def_static("from_json", &parse_path_spec)
        .def_static("line", &Path::line)
        .def_static("polyline", &Path::polyline)
        .def_static("circle", &Path::circle, py::arg("center"), py::arg("radius"), py::arg("u"), py::arg("turns") = 1.0)
        .def_static("arc", &Path::arc)
        .def("point", &Path::point)
        .def("start", &Path::start)
        .def("end", &Path::end)
        .def("kind", &Path::kind)
        .def("to_json", [](const Path& p) { return to_json(p).dump(); });

    py::class_<IntegrationReport>(m, "IntegrationReport")
        .def_readonly("steps", &IntegrationReport::steps)
        .def_readonly("value", &IntegrationReport::value)
        .def_readonly("reference", &IntegrationReport::reference)
        .def_readonly("abs_error", &IntegrationReport::abs_error)
        .def_readonly("est_order", &IntegrationReport::est_order)
        .def_readonly("exact", &IntegrationReport::exact)
        .def("to_json", [](const IntegrationReport& r) { return to_json(r).dump(); });

    m.def("slice_point", [](const Quaternion& x) {
        const SlicePoint p = slice_point(x);
        return py::make_tuple(p.xi0, p.r, p.u.value());
    });
    m.def("decompose_delta", [](const Quaternion& x, const Quaternion& d) {
        const DeltaSplit s = decompose_delta(x, d);
        return py::make_tuple(s.parallel, s.perp);
    });
    m.def("perp_quotient", &perp_quotient);
    m.def("slice_form", [](const AnalyticFunction& F, const Quaternion& x) {
        const SliceForm f = slice_form(F, x);
        return py::make_tuple(f.A, f.B);
    });
    m.def("antiderivative", &antiderivative);
    m.def("differential", &differential, py::arg("F"), py::arg("x"), py::arg("delta"));
    m.def("sym_product_sum", &sym_product_sum, py::arg("x"), py::arg("delta"), py::arg("n"));

    m.def(
        "integrate",
        [](const AnalyticFunction& F, const Path& path, std::size_t steps, const std::string& rule, unsigned threads) {
            py::gil_scoped_release release;
            return integrate(F, path, steps, {rule_from_string(rule), threads});
        },
        py::arg("F"), py::arg("path"), py::arg("steps"), py::arg("rule") = "left", py::arg("threads") = 1);
    m.def(
        "integrate_slice_quadrature",
        [](const AnalyticFunction& F, const Path& path, std::size_t steps, unsigned threads) {
            py::gil_scoped_release release;
            return integrate_slice_quadrature(F, path, steps, threads);
        },
        py::arg("F"), py::arg("path"), py::arg("steps"), py::arg("threads") = 1);
    m.def(
        "convergence_study",
        [](const AnalyticFunction& F, const Path& path, const std::vector<std::size_t>& steps, const std::string& rule) {
            return convergence_study(F, path, steps, {rule_from_string(rule), 1});
        },
        py::arg("F"), py::arg("path"), py::arg("steps"), py::arg("rule") = "left");
    m.def("integrate_with_branch_tracking", &integrate_with_branch_tracking, py::arg("F"), py::arg("path"),
          py::arg("steps"));

    m.def(
        "run_suite",
        [](const std::string& suite, unsigned threads) {
            const Tolerances tol = tolerances_from_env();
            json out = json::array();
            for (const auto& c : run_suite(suite == "all" ? Suite::all : Suite::standard, tol, threads)) {
                out.push_back(to_json(c));
            }
            return out.dump();
        },
        py::arg("suite") = "default", py::arg("threads") = 1, "JSON array of check reports");

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
