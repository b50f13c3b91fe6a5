// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>
#include <variant>

#include "cszego/boundary_operator.hpp"
#include "cszego/curve_spec.hpp"
#include "cszego/error.hpp"
#include "cszego/geometry.hpp"
#include "cszego/kernels.hpp"
#include "cszego/lambda.hpp"
#include "cszego/verify.hpp"

namespace py = pybind11;
using namespace cszego;

namespace {

// Python points: a complex number, a real, None or float('inf') for
// infinity, or a literal string such as "1-2i".
using PyPoint = std::variant<std::complex<double>, std::string, std::nullptr_t>;

ScalarPoint to_point(const PyPoint& p) {
  if (std::holds_alternative<std::nullptr_t>(p)) return ScalarPoint::infinity();
  if (const auto* s = std::get_if<std::string>(&p)) return parse_point(*s);
  const cplx z = std::get<std::complex<double>>(p);
  if (std::isinf(z.real()) || std::isinf(z.imag())) return ScalarPoint::infinity();
  return z;
}

py::object from_point(const ScalarPoint& p) {
  if (p.is_infinity()) return py::none();
  return py::cast(p.value());
}

Side to_side(const std::string& s) {
  if (s == "interior") return Side::Interior;
  if (s == "exterior") return Side::Exterior;
  fail(ErrorKind::Parse, "side must be 'interior' or 'exterior'");
}

std::string kind_of(const Curve& c) {
  if (c.get_if<Circle>()) return "circle";
  if (c.get_if<Ellipse>()) return "ellipse";
  if (c.get_if<Wedge>()) return "wedge";
  return "sampled";
}

}  // namespace

PYBIND11_MODULE(_cszego, m) {
  m.doc() = "Cauchy-Szego Lambda function on planar curves";

  static py::handle error_type = py::exception<Error>(m, "CszegoError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  py::class_<Curve>(m, "Curve")
      .def_static("parse", &parse_curve, py::arg("spec"), py::arg("nodes") = 512)
      .def_static("circle", &Curve::circle, py::arg("center"), py::arg("radius"))
      .def_static("ellipse", &Curve::ellipse, py::arg("r"))
      .def_static("wedge", &Curve::wedge, py::arg("theta"))
      .def_property_readonly("kind", &kind_of)
      .def_property_readonly("is_bounded", &Curve::is_bounded)
      .def("point", &curve_point, py::arg("t"))
      .def("arc_length", &arc_length)
      .def("capacity", &analytic_capacity)
      .def("area", &enclosed_area)
      .def("__repr__", [](const Curve& c) { return "<cszego.Curve " + kind_of(c) + ">"; });

  py::class_<LambdaValue>(m, "LambdaValue")
      .def_readonly("value", &LambdaValue::value)
      .def_property_readonly("regime", [](const LambdaValue& v) { return std::string(to_string(v.regime)); })
      .def_readonly("accuracy", &LambdaValue::accuracy)
      .def("__float__", [](const LambdaValue& v) { return v.value; })
      .def("__repr__", [](const LambdaValue& v) {
        return "LambdaValue(" + std::to_string(v.value) + ", " + std::string(to_string(v.regime)) + ")";
      });

  m.def(
      "lambda_value", [](const Curve& c, const PyPoint& z) { return lambda(c, to_point(z)); }, py::arg("curve"),
      py::arg("z"), "Lambda(curve, z); z may be complex, None or inf for infinity, or a literal string.");
  m.def("lambda_wedge", &lambda_wedge, py::arg("theta"), py::arg("phi"));
  m.def("lambda_ellipse_0", &lambda_ellipse_0, py::arg("r"));
  m.def("lambda_ellipse_inf", &lambda_ellipse_inf, py::arg("r"));
  m.def("wedge_bound_B", &wedge_bound_B, py::arg("theta"));
  m.def("fks_upper_bound", &fks_upper_bound, py::arg("r"));

  m.def(
      "szego_diag",
      [](const Curve& c, const std::string& side, const PyPoint& z) {
        return szego_diag(c, to_side(side), to_point(z)).value;
      },
      py::arg("curve"), py::arg("side"), py::arg("z"));

  m.def(
      "norm_bounds",
      [](const Curve& c) {
        const NormBounds b = cauchy_norm_bounds(c, default_bounds_grid(c));
        py::dict d;
        d["lower"] = b.lower;
        d["upper"] = b.upper ? py::cast(*b.upper) : py::none();
        d["argmax"] = from_point(b.argmax);
        d["evaluated"] = b.evaluated;
        return d;
      },
      py::arg("curve"), "Grid lower bound on the Cauchy norm and the FKS upper bound when known.");

  m.def(
      "cauchy_matrix",
      [](const Curve& c, const std::string& side, int n) {
        return discretize_cauchy(c, to_side(side), n).entries;
      },
      py::arg("curve"), py::arg("side") = "interior", py::arg("n") = 512,
      "Symmetrized n x n discretization of the boundary Cauchy transform.");
  m.def(
      "operator_norm",
      [](const Curve& c, int n, const std::string& side) {
        return operator_norm(discretize_cauchy(c, to_side(side), n));
      },
      py::arg("curve"), py::arg("n") = 512, py::arg("side") = "interior");
  m.def(
      "spectrum",
      [](const Curve& c, int n, int count) {
        return spectrum_A(kerzman_stein(discretize_cauchy(c, Side::Interior, n)), count);
      },
      py::arg("curve"), py::arg("n") = 512, py::arg("count") = 8,
      "Leading lambda_l of the Kerzman-Stein operator, whose eigenvalues are +-i lambda_l.");
  m.def(
      "szego_kst",
      [](const Curve& c, const PyPoint& z, int n) {
        const ScalarPoint p = to_point(z);
        const Side side = classify(c, p) == Region::Interior ? Side::Interior : Side::Exterior;
        const BoundaryOperatorMatrix cm = discretize_cauchy(c, side, n);
        return szego_via_kst(cm, kerzman_stein(cm), p.value()).diag;
      },
      py::arg("curve"), py::arg("z"), py::arg("n") = 512, "S(z, z) by the Kerzman-Stein-Trummer solve.");

  m.def(
      "verify",
      [](const std::string& level) {
        if (level != "quick" && level != "full") fail(ErrorKind::Parse, "level must be 'quick' or 'full'");
        py::list out;
        for (const CheckResult& r : run_verification(level == "full" ? VerifyLevel::Full : VerifyLevel::Quick)) {
          py::dict d;
          d["suite"] = r.suite;
          d["name"] = r.name;
          d["value"] = r.value;
          d["reference"] = r.reference;
          d["tolerance"] = r.tolerance;
          d["margin"] = r.margin;
          d["passed"] = r.passed;
          out.append(d);
        }
        return out;
      },
      py::arg("level") = "quick");
}
