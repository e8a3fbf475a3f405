#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exle/diagnostics.hpp"
#include "exle/errors.hpp"
#include "exle/solver.hpp"
#include "exle/threshold.hpp"

namespace py = pybind11;
using namespace exle;

namespace {

py::dict branch_dict(const Branch& br) {
    py::list points;
    for (const auto& pt : br.points) {
        py::dict d;
        d["lambda"] = pt.lambda;
        d["gamma"] = pt.gamma;
        d["sup_u"] = pt.sup_u;
        d["sup_v"] = pt.sup_v;
        d["mu1"] = pt.mu1;
        d["iterations"] = pt.iterations;
        points.append(d);
    }
    py::dict out;
    out["sigma"] = br.sigma;
    out["lambda_lo"] = br.lambda_lo;
    out["lambda_hi"] = br.lambda_hi;
    out["steps"] = br.steps;
    out["relative_width"] = br.relative_width();
    out["points"] = points;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Threshold polynomials and radial minimal-solution branches";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<DiagnosticError>(m, "DiagnosticError", PyExc_RuntimeError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

    py::class_<ExponentPair>(m, "ExponentPair")
        .def(py::init<double, double>(), py::arg("p"), py::arg("theta"))
        .def_property_readonly("p", &ExponentPair::p)
        .def_property_readonly("theta", &ExponentPair::theta)
        .def("canonical", &ExponentPair::canonical)
        .def("swapped", &ExponentPair::swapped)
        .def("is_canonical", &ExponentPair::is_canonical)
        .def("is_diagonal", &ExponentPair::is_diagonal)
        .def("__repr__", [](const ExponentPair& e) {
            return "ExponentPair(p=" + py::repr(py::float_(e.p())).cast<std::string>() +
                   ", theta=" + py::repr(py::float_(e.theta())).cast<std::string>() + ")";
        });

    py::class_<ThresholdReport>(m, "ThresholdReport")
        .def_readonly("p", &ThresholdReport::p)
        .def_readonly("theta", &ThresholdReport::theta)
        .def_readonly("t0", &ThresholdReport::t0)
        .def_readonly("s0", &ThresholdReport::s0)
        .def_readonly("x0", &ThresholdReport::x0)
        .def_readonly("n_cowan", &ThresholdReport::n_cowan)
        .def_readonly("n_new", &ThresholdReport::n_new)
        .def_readonly("improvement", &ThresholdReport::improvement);

    py::class_<RootBracket>(m, "RootBracket")
        .def_readonly("root", &RootBracket::root)
        .def_readonly("lo", &RootBracket::lo)
        .def_readonly("hi", &RootBracket::hi)
        .def_readonly("iterations", &RootBracket::iterations);

    m.def("eval_t0", &eval_t0, py::arg("e"));
    m.def("eval_L", &eval_L, py::arg("e"), py::arg("s"));
    m.def("eval_H", &eval_H, py::arg("e"), py::arg("x"));
    m.def("largest_root_L", &largest_root_L, py::arg("e"), py::arg("tol") = kDefaultRootTol);
    m.def("threshold_report", &threshold_report, py::arg("e"), py::arg("tol") = kDefaultRootTol);
    m.def("hausdorff_bound", &hausdorff_bound, py::arg("e"), py::arg("dim"), py::arg("tol") = kDefaultRootTol);
    m.def("hausdorff_bound_proof_form", &hausdorff_bound_proof_form, py::arg("e"), py::arg("dim"),
          py::arg("tol") = kDefaultRootTol);
    m.def("scaling_exponents", [](const ExponentPair& e) {
        const auto se = scaling_exponents(e);
        return py::make_tuple(se.alpha, se.beta);
    }, py::arg("e"));
    m.def("stability_product", &stability_product, py::arg("e"), py::arg("s"));

    m.def("check_polynomial_identities", [](const ExponentPair& e, int samples, std::uint64_t seed) {
        const auto rep = check_polynomial_identities(e, samples, seed);
        py::list out;
        for (const auto& r : rep.entries) {
            py::dict d;
            d["name"] = r.name;
            d["value"] = r.value;
            d["tolerance"] = r.tolerance;
            d["passed"] = r.passed;
            out.append(d);
        }
        return out;
    }, py::arg("e"), py::arg("samples") = 100, py::arg("seed") = 0);

    m.def("scan_stability_equivalence", [](const ExponentPair& e, int points) {
        const auto scan = scan_stability_equivalence(e, points);
        return py::make_tuple(scan.points, scan.skipped, scan.disagreements);
    }, py::arg("e"), py::arg("points") = 1000);

    m.def("solve_minimal", [](const ExponentPair& e, double lambda, double gamma, int dim, int nodes) {
        const RadialGrid grid(dim, nodes);
        const auto res = solve_minimal(e, lambda, gamma, grid);
        py::dict d;
        d["converged"] = res.converged();
        d["iterations"] = res.iterations;
        d["u"] = res.state.u;
        d["v"] = res.state.v;
        d["r"] = std::vector<double>(grid.nodes().begin(), grid.nodes().end());
        return d;
    }, py::arg("e"), py::arg("lam"), py::arg("gamma"), py::arg("dim") = 3, py::arg("nodes") = 128);

    m.def("continue_ray", [](const ExponentPair& e, double sigma, int dim, int nodes, double bracket_tol) {
        ContinuationConfig cfg;
        cfg.bracket_tol = bracket_tol;
        return branch_dict(continue_ray(e, sigma, RadialGrid(dim, nodes), cfg));
    }, py::arg("e"), py::arg("sigma") = 1.0, py::arg("dim") = 3, py::arg("nodes") = 128,
       py::arg("bracket_tol") = 1e-4);

    m.def("singular_profile", [](const ExponentPair& e, int dim, double lambda, double gamma) {
        const auto c = singular_profile(e, dim, lambda, gamma);
        return py::make_tuple(c.a, c.b);
    }, py::arg("e"), py::arg("dim"), py::arg("lam"), py::arg("gamma"));
}
