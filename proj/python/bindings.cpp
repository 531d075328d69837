#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splinex/assembly.hpp"
#include "splinex/duals.hpp"
#include "splinex/experiments.hpp"
#include "splinex/solvers.hpp"

namespace py = pybind11;
using namespace splinex;

namespace {

// System + right-hand-side helpers bundled for Python use.
struct Problem {
    ExtensionSystem sys;

    Problem(const std::string& domain, std::vector<int> p, std::vector<int> q,
            std::vector<int> N, const std::string& zdual) {
        const Domain dom = builtin_domain(domain);
        TensorBasis basis = make_basis(std::move(p), std::move(q), std::move(N));
        sys = build_system(dom, basis, parse_zdual(zdual, basis));
    }

    Eigen::MatrixXd points() const {
        Eigen::MatrixXd pts(sys.grid.M, sys.grid.dim());
        for (int64_t m = 0; m < sys.grid.M; ++m) {
            const std::vector<double> x = sys.grid.coords(m);
            for (int i = 0; i < sys.grid.dim(); ++i) pts(m, i) = x[i];
        }
        return pts;
    }

    FitResult fit(const Eigen::VectorXd& b, const std::string& solver) const {
        return run_solver(solver, sys, b);
    }

    Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const { return sys.A * x; }
};

}  // namespace

PYBIND11_MODULE(splinex, m) {
    m.doc() = "Least-squares spline extension approximation on irregular domains";

    m.def("bspline", py::vectorize([](int p, double t) { return bspline(p, t); }),
          py::arg("p"), py::arg("t"), "Centred cardinal B-spline of degree p");
    m.def("characteristic_function",
          py::vectorize([](int order, double w) { return characteristic_function(order, w); }),
          py::arg("order"), py::arg("omega"));
    m.def(
        "sample_spline",
        [](int p, int q) {
            const SampledSpline s = sample_spline(p, q);
            Eigen::VectorXd v =
                Eigen::Map<const Eigen::VectorXd>(s.values.data(), s.values.size());
            return py::make_tuple(v, s.lo, s.hi);
        },
        py::arg("p"), py::arg("q"), "Returns (values, lo, hi) of b_q");
    m.def(
        "eval_periodized",
        py::vectorize([](int p, int N, int k, double t, bool l2scaled) {
            PeriodizedBasis b{p, N,
                              l2scaled ? Normalization::L2scaled : Normalization::sampleScaled};
            return b.eval(k, t);
        }),
        py::arg("p"), py::arg("N"), py::arg("k"), py::arg("t"), py::arg("l2scaled") = true,
        "Periodized translate phi^p_{N,k}(t)");

    m.def(
        "continuous_dual_coeffs",
        [](int p, int N) { return continuous_dual_coeffs(p, N).coeffs; }, py::arg("p"),
        py::arg("N"));
    m.def(
        "discrete_dual_coeffs",
        [](int p, int q, int N) { return discrete_dual_coeffs(p, q, N).coeffs; },
        py::arg("p"), py::arg("q"), py::arg("N"));
    m.def(
        "compact_dual",
        [](int p, int q, std::optional<int> K, std::optional<double> norm_cap) {
            const CompactDualSequence h = compact_dual(p, q, K, norm_cap);
            return py::make_tuple(h.values, h.K);
        },
        py::arg("p"), py::arg("q"), py::arg("K") = std::nullopt,
        py::arg("norm_cap") = std::nullopt, "Returns (values on [-K,K], K)");

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("x", &FitResult::x)
        .def_readonly("residual_norm", &FitResult::residual_norm)
        .def_readonly("coefficient_norm", &FitResult::coefficient_norm)
        .def_readonly("numerical_rank", &FitResult::numerical_rank)
        .def_readonly("block_rows", &FitResult::block_rows)
        .def_readonly("block_cols", &FitResult::block_cols)
        .def_readonly("nonzero_count", &FitResult::nonzero_count)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("timings", &FitResult::timings)
        .def("__repr__", [](const FitResult& r) {
            return "<FitResult residual=" + std::to_string(r.residual_norm) +
                   " rank=" + std::to_string(r.numerical_rank) + ">";
        });

    py::class_<Problem>(m, "Problem")
        .def(py::init<const std::string&, std::vector<int>, std::vector<int>,
                      std::vector<int>, const std::string&>(),
             py::arg("domain"), py::arg("p"), py::arg("q"), py::arg("n"),
             py::arg("zdual") = "compact")
        .def_property_readonly("num_points",
                               [](const Problem& p) { return p.sys.grid.M; })
        .def_property_readonly("num_basis",
                               [](const Problem& p) { return p.sys.cols(); })
        .def("points", &Problem::points, "Grid points inside the domain, M x d")
        .def("fit", &Problem::fit, py::arg("b"), py::arg("solver") = "reduced-az")
        .def("evaluate", &Problem::evaluate, py::arg("x"),
             "A @ x: fitted values at the grid points");
}
