#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gfde/error.hpp"
#include "gfde/conditions.hpp"
#include "gfde/gevrey.hpp"
#include "gfde/io.hpp"
#include "gfde/picard.hpp"

namespace py = pybind11;

namespace {

py::object to_py(const gfde::json& j) {
    switch (j.type()) {
        case gfde::json::value_t::null: return py::none();
        case gfde::json::value_t::boolean: return py::bool_(j.get<bool>());
        case gfde::json::value_t::number_integer: return py::int_(j.get<long long>());
        case gfde::json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case gfde::json::value_t::number_float: return py::float_(j.get<double>());
        case gfde::json::value_t::string: return py::str(j.get<std::string>());
        case gfde::json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(to_py(v));
            return out;
        }
        case gfde::json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
            return out;
        }
        default: return py::none();
    }
}

gfde::json from_py(const py::handle& obj) {
    auto dumps = py::module_::import("json").attr("dumps");
    return gfde::json::parse(dumps(obj).cast<std::string>());
}

py::tuple solve(const gfde::Problem& p, bool force, std::optional<double> tol, std::optional<std::size_t> max_iter) {
    const auto rep = gfde::check_conditions(p);
    gfde::SolveOptions opts;
    opts.force = force;
    opts.tol = tol;
    opts.max_iter = max_iter;
    const auto s = gfde::solve(p, rep, opts);
    return py::make_tuple(s.u, to_py(gfde::to_json(s, p)));
}

}  // namespace

PYBIND11_MODULE(_gfde, m) {
    m.doc() = "Solver and diagnostics for y'(x) = a(x) P(y(psi(x))) + b(x), y(d) = c on [-1, 1]";

    auto base = py::register_exception<gfde::Error>(m, "GfdeError", PyExc_RuntimeError);
    py::register_exception<gfde::ParseError>(m, "ParseError", base.ptr());
    py::register_exception<gfde::EvalError>(m, "EvalError", base.ptr());
    py::register_exception<gfde::DomainError>(m, "DomainError", base.ptr());
    py::register_exception<gfde::ResolutionError>(m, "ResolutionError", base.ptr());
    py::register_exception<gfde::InputError>(m, "InputError", base.ptr());
    py::register_exception<gfde::ConditionError>(m, "ConditionError", base.ptr());
    py::register_exception<gfde::BallEscapeError>(m, "BallEscapeError", base.ptr());

    py::class_<gfde::Expr>(m, "Expr")
        .def(py::init(&gfde::Expr::parse), py::arg("source"))
        .def("__call__", py::overload_cast<double>(&gfde::Expr::eval, py::const_), py::arg("t"))
        .def("__call__", py::overload_cast<gfde::complex>(&gfde::Expr::eval, py::const_), py::arg("z"))
        .def("__str__", &gfde::Expr::str)
        .def_property_readonly("source", &gfde::Expr::source);

    py::class_<gfde::ChebFun>(m, "ChebFun")
        .def(py::init<>())
        .def(py::init<std::vector<double>, double>(), py::arg("coeffs"), py::arg("build_tol") = gfde::kDefaultChebTol)
        .def_static("build", &gfde::ChebFun::build, py::arg("f"), py::arg("tol") = gfde::kDefaultChebTol,
                    py::arg("max_degree") = gfde::kDefaultMaxDegree)
        .def("__call__", &gfde::ChebFun::eval, py::arg("x"))
        .def("eval_complex",
             [](const gfde::ChebFun& u, gfde::complex z) {
                 const auto v = u.eval_complex(z);
                 return py::make_tuple(v.value, v.trusted);
             })
        .def_property_readonly("coeffs", &gfde::ChebFun::coeffs)
        .def_property_readonly("degree", &gfde::ChebFun::degree)
        .def("sup_norm", &gfde::ChebFun::sup_norm)
        .def("l1_norm", &gfde::ChebFun::l1_norm)
        .def("integral_from", &gfde::ChebFun::integral_from, py::arg("d"), py::arg("x"))
        .def("antiderivative", &gfde::ChebFun::antiderivative)
        .def("differentiate", &gfde::ChebFun::differentiate)
        .def("roots", &gfde::ChebFun::roots)
        .def_property_readonly("ellipse_rho", &gfde::ChebFun::ellipse_rho);

    py::class_<gfde::Problem>(m, "Problem")
        .def_static("from_dict", [](const py::dict& d) { return gfde::problem_from_json(from_py(d)); })
        .def_static("load", [](const std::string& path) { return gfde::load_problem(path); })
        .def_static("builtin", [](const std::string& name) { return gfde::builtin_problem(name); })
        .def("to_dict", [](const gfde::Problem& p) { return to_py(gfde::problem_to_json(p)); })
        .def_readwrite("d", &gfde::Problem::d)
        .def_readwrite("c", &gfde::Problem::c)
        .def_readwrite("k", &gfde::Problem::k);

    m.def("validate", [](const gfde::Problem& p) { return to_py(gfde::to_json(gfde::validate(p))); });
    m.def("check_conditions", [](const gfde::Problem& p) {
        return to_py(gfde::to_json(gfde::check_conditions(p), p.P));
    });
    m.def("solve", &solve, py::arg("problem"), py::arg("force") = false, py::arg("tol") = std::nullopt,
          py::arg("max_iter") = std::nullopt, "Returns (u, report).");
    m.def("residual", &gfde::residual, py::arg("u"), py::arg("problem"));
    m.def(
        "check_ek",
        [](const std::string& psi, double k, const std::vector<double>& A, std::size_t p_max, std::size_t density) {
            return to_py(gfde::to_json(gfde::check_Ek(gfde::Expr::parse(psi), k, A, p_max, density, 2 * density)));
        },
        py::arg("psi"), py::arg("k") = 1.0, py::arg("A") = std::vector<double>{0.1, 0.5, 0.9}, py::arg("p_max") = 100,
        py::arg("density") = gfde::kDefaultBoundaryDensity);
    m.def(
        "gevrey",
        [](const gfde::ChebFun& u, std::size_t n_max) {
            const auto norms = gfde::derivative_norms(u, n_max);
            return to_py(gfde::to_json(norms, gfde::gevrey_order_estimate(norms)));
        },
        py::arg("u"), py::arg("n_max") = gfde::kMaxDerivativeOrder);
    m.def(
        "gevrey_order_estimate",
        [](const std::vector<double>& norms) {
            const auto est = gfde::gevrey_order_estimate(norms);
            py::dict out;
            out["slope"] = est.slope;
            out["k_hat"] = est.k_hat ? py::object(py::float_(*est.k_hat)) : py::object(py::none());
            out["classification"] = gfde::to_string(est.classification);
            return out;
        },
        py::arg("norms"));
}
