// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include "cszego/geometry.hpp"

namespace cszego {

/// Interior is the domain to the left of a counterclockwise curve.
enum class Side { Interior, Exterior };

struct RiemannMapValue {
  cplx value;
  cplx derivative;
};

struct NormValue {
  double value;
  /// z sits within ten node spacings of the curve; quadrature may be poor.
  bool near_boundary;
};

struct SzegoDiag {
  double value;
  /// Set for S(inf, inf) on the exterior side, which vanishes identically.
  bool exact_zero;
};

/// +-T(zeta) / (2 pi i (zeta - z)) with zeta = curve_point(c, t).
cplx cauchy_kernel(const Curve& c, Side side, cplx z, double t);

/// (1/4 pi^2) \int |zeta - z|^-2 d sigma(zeta) by the given rule.
NormValue cauchy_norm_sq(const Curve& c, cplx z, const QuadratureRule& rule);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// \int_0^inf dx / |x - r e^{i alpha}|^2 = 1 / (r sinc(pi - alpha)).
double wedge_I(double r, double alpha);

/// Squared Cauchy-kernel norm at z = r e^{i phi} for the wedge boundary,
/// phi in (-theta, 2 pi - theta) off the two rays.
double wedge_cauchy_norm_sq(double theta, double r, double phi);

/// Closed form of the squared Cauchy-kernel norm at 0 for the ellipse E_r.
double ellipse_cauchy_norm0(double r);

/// Szego kernel on the diagonal, S(z, z), for curves with a known
/// Riemann map (circle, ellipse, wedge).
SzegoDiag szego_diag(const Curve& c, Side side, const ScalarPoint& z);

/// Interior Riemann map of E_r onto the unit disc, normalized at 0.
RiemannMapValue ellipse_riemann_map(double r, cplx z);

/// Exterior map (r+1) / (z + sqrt(z^2 - (r^2-1))) of E_r onto the disc,
/// sending infinity to 0.
RiemannMapValue ellipse_exterior_map(double r, cplx z);

/// Off-diagonal Szego kernel S(z, w) from the transformation law; w may lie
/// in the closure of the domain.
cplx szego_kernel(const Curve& c, Side side, cplx z, cplx w);

/// S(z, zeta(t)) for a boundary point.
cplx szego_boundary_kernel(const Curve& c, Side side, cplx z, double t);

}  // namespace cszego
