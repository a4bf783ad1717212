// Python bindings for the binary64 routines.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>
#include <stdexcept>
#include <vector>

#include "owent/bvn.hpp"
#include "owent/numkernel.hpp"
#include "owent/oracle.hpp"
#include "owent/owen_t.hpp"
#include "owent/tetrachoric.hpp"

namespace py = pybind11;
using owent::SeriesVariant;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::dict report_dict(const owent::EvalReport<double>& r) {
    py::dict d;
    d["value"] = r.value;
    d["iterations"] = r.iterations;
    d["bound"] = r.bound;
    d["variant"] = owent::to_string(r.variant);
    d["transformed"] = r.transformed;
    d["converged"] = r.converged;
    return d;
}

py::dict tetrachoric_dict(const owent::TetrachoricResult<double>& r) {
    py::dict d;
    d["value"] = r.value;
    d["iterations"] = r.iterations;
    d["converged"] = r.converged;
    d["slow"] = r.slow;
    return d;
}

py::dict quadrature_dict(const owent::oracle::QuadratureResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["error"] = r.error;
    d["converged"] = r.converged;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Owen's T function and the bivariate normal cdf";

    py::enum_<SeriesVariant>(m, "SeriesVariant")
        .value("ATAN_EXT_NO", SeriesVariant::AtanExtNo)
        .value("ATAN_EXT_YES", SeriesVariant::AtanExtYes);

    m.def("std_normal_cdf", &owent::std_normal_cdf, py::arg("h"));

    m.def(
        "owen_t",
        [](double h, double r, SeriesVariant variant, double eps) {
            return owent::owen_t(h, r, variant, eps).value;
        },
        py::arg("h"), py::arg("r"), py::arg("variant") = SeriesVariant::AtanExtNo, py::arg("eps") = -1.0);

    m.def(
        "owen_t_report",
        [](double h, double r, SeriesVariant variant, double eps) {
            return report_dict(owent::owen_t(h, r, variant, eps));
        },
        py::arg("h"), py::arg("r"), py::arg("variant") = SeriesVariant::AtanExtNo, py::arg("eps") = -1.0);

    m.def(
        "owen_t_batch",
        [](Array h, Array r, SeriesVariant variant, double eps) {
            const std::span<const double> hs(h.data(), static_cast<std::size_t>(h.size()));
            const std::span<const double> rs(r.data(), static_cast<std::size_t>(r.size()));
            const auto batch = owent::owen_t_batch(hs, rs, variant, eps);
            Array values(static_cast<py::ssize_t>(batch.reports.size()));
            auto out = values.mutable_unchecked<1>();
            for (std::size_t i = 0; i < batch.reports.size(); ++i) {
                out(static_cast<py::ssize_t>(i)) = batch.reports[i].value;
            }
            return py::make_tuple(values, batch.shared_iterations);
        },
        py::arg("h"), py::arg("r"), py::arg("variant") = SeriesVariant::AtanExtNo, py::arg("eps") = -1.0);

    m.def(
        "phi2",
        [](double x, double y, double rho, SeriesVariant variant, bool split) {
            return owent::phi2(x, y, owent::Correlation<double>(rho), owent::Phi2Options{variant, split});
        },
        py::arg("x"), py::arg("y"), py::arg("rho"), py::arg("variant") = SeriesVariant::AtanExtNo,
        py::arg("split") = true);

    m.def(
        "phi2_h0",
        [](double h, double rho, SeriesVariant variant) {
            return owent::phi2_h0(h, owent::Correlation<double>(rho), variant);
        },
        py::arg("h"), py::arg("rho"), py::arg("variant") = SeriesVariant::AtanExtNo);

    m.def(
        "phi2_tetrachoric",
        [](double x, double y, double rho, double eps) {
            return tetrachoric_dict(owent::phi2_tetrachoric_xy(x, y, rho, eps));
        },
        py::arg("x"), py::arg("y"), py::arg("rho"), py::arg("eps") = -1.0);

    m.def(
        "phi2_tetrachoric_h0",
        [](double h, double rho, bool accelerated, double eps) {
            return tetrachoric_dict(owent::phi2_tetrachoric_h0(h, rho, accelerated, eps));
        },
        py::arg("h"), py::arg("rho"), py::arg("accelerated") = true, py::arg("eps") = -1.0);

    m.def(
        "owen_t_tetrachoric",
        [](double h, double r, bool accelerated, double eps) {
            return tetrachoric_dict(owent::owen_t_tetrachoric(h, r, accelerated, eps));
        },
        py::arg("h"), py::arg("r"), py::arg("accelerated") = true, py::arg("eps") = -1.0);

    m.def(
        "owen_t_quadrature",
        [](double h, double a, double tol) { return quadrature_dict(owent::oracle::owen_t_quadrature(h, a, tol)); },
        py::arg("h"), py::arg("a"), py::arg("tol") = 1e-13);

    m.def(
        "phi2_quadrature",
        [](double x, double y, double rho, double tol) {
            return quadrature_dict(owent::oracle::phi2_plackett_quadrature(x, y, rho, tol));
        },
        py::arg("x"), py::arg("y"), py::arg("rho"), py::arg("tol") = 1e-13);
}
