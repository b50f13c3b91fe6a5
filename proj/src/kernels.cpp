// SPDX-License-Identifier: Apache-2.0

#include "cszego/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cszego/error.hpp"
#include "cszego/specfun.hpp"

namespace cszego {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

using specfun::Theta;

// Value of a Riemann map and a holomorphic branch of the square root of
// its derivative.
struct MapJet {
  cplx value;
  cplx sqrt_deriv;
};

double ellipse_level(double r, cplx z) {
  const double x = z.real() / r;
  return x * x + z.imag() * z.imag();
}

struct EllipseTheta {
  double r, c, q;

  explicit EllipseTheta(double r_)
      : r(r_), c(std::sqrt((r_ - 1.0) * (r_ + 1.0))), q(std::pow((r_ - 1.0) / (r_ + 1.0), 2)) {}

  cplx value(cplx z) const {
    const cplx u = std::asin(z / c);
    return specfun::theta(Theta::One, u, q) / specfun::theta(Theta::Four, u, q);
  }

  cplx derivative(cplx z) const {
    const cplx u = std::asin(z / c);
    const cplx t1 = specfun::theta(Theta::One, u, q);
    const cplx t4 = specfun::theta(Theta::Four, u, q);
    const cplx d1 = specfun::theta(Theta::One, u, q, 1);
    const cplx d4 = specfun::theta(Theta::Four, u, q, 1);
    const cplx cu = std::cos(u);
    if (std::abs(cu) > 3e-6) return (d1 * t4 - t1 * d4) / (t4 * t4) / (c * cu);
    // At a focus both f'(u) and cos u vanish: take the ratio of derivatives.
    const cplx e1 = specfun::theta(Theta::One, u, q, 2);
    const cplx e4 = specfun::theta(Theta::Four, u, q, 2);
    const cplx f2 = (e1 * t4 - t1 * e4) / (t4 * t4) - 2.0 * d4 * (d1 * t4 - t1 * d4) / (t4 * t4 * t4);
    return f2 / (-c * std::sin(u));
  }

  // sqrt(Theta') continued from the positive root at 0 along [0, z].
  cplx sqrt_derivative(cplx z) const {
    constexpr int kSteps = 64;
    cplx root = std::sqrt(derivative(0.0));
    for (int k = 1; k <= kSteps; ++k) {
      const cplx next = std::sqrt(derivative(z * (static_cast<double>(k) / kSteps)));
      root = std::abs(next - root) <= std::abs(next + root) ? next : -next;
    }
    return root;
  }
};

cplx ellipse_exterior_value(double r, cplx z) {
  const double c = std::sqrt((r - 1.0) * (r + 1.0));
  return (r + 1.0) / (z + std::sqrt(z - c) * std::sqrt(z + c));
}

double wedge_angle(double theta, cplx z) {
  double phi = std::arg(z);
  if (phi < -theta) phi += 2.0 * kPi;
  return phi;
}

void require_side(const Curve& c, Side side, cplx z, bool allow_boundary) {
  const Region reg = classify(c, z);
  if (reg == Region::OnCurve && allow_boundary) return;
  const Region want = side == Side::Interior ? Region::Interior : Region::Exterior;
  if (reg != want) {
    fail(ErrorKind::SideMismatch, std::string("point is not strictly inside the ") +
                                      (side == Side::Interior ? "interior" : "exterior") +
                                      " domain");
  }
}

MapJet map_jet(const Curve& c, Side side, cplx z, bool allow_boundary) {
  if (c.is_sampled()) {
    fail(ErrorKind::NoRiemannMap, "no closed-form Riemann map for a sampled curve");
  }
  if (c.get_if<Wedge>() && z == cplx(0.0)) {
    fail(ErrorKind::Singular, "the wedge map is singular at the corner");
  }
  require_side(c, side, z, allow_boundary);

  if (const auto* k = c.get_if<Circle>()) {
    const cplx w = z - k->center;
    const double rho = k->radius;
    if (side == Side::Interior) return {w / rho, 1.0 / std::sqrt(rho)};
    return {rho / w, kI * std::sqrt(rho) / w};
  }
  if (const auto* e = c.get_if<Ellipse>()) {
    const double r = e->r;
    if (r == 1.0) {
      if (side == Side::Interior) return {z, 1.0};
      return {1.0 / z, kI / z};
    }
    if (side == Side::Interior) {
      const EllipseTheta m(r);
      return {m.value(z), m.sqrt_derivative(z)};
    }
    const double kappa = 0.5 * (r + 1.0);
    const double rho = (r - 1.0) / (r + 1.0);
    const cplx psi = ellipse_exterior_value(r, z);
    return {psi, kI * psi / (std::sqrt(kappa) * std::sqrt(1.0 - rho * psi * psi))};
  }
  const auto& w = *c.get_if<Wedge>();
  // Straighten the sector onto the right half-plane, then Cayley onto D.
  if (side == Side::Interior) {
    const double p = kPi / (2.0 * w.theta);
    const cplx zp = std::pow(z, p);
    return {(zp - 1.0) / (zp + 1.0), std::sqrt(2.0 * p) * std::pow(z, 0.5 * (p - 1.0)) / (zp + 1.0)};
  }
  const double p = kPi / (2.0 * (kPi - w.theta));
  const cplx zp = std::pow(-z, p);
  return {(zp - 1.0) / (zp + 1.0),
          kI * std::sqrt(2.0 * p) * std::pow(-z, 0.5 * (p - 1.0)) / (zp + 1.0)};
}

}  // namespace

cplx cauchy_kernel(const Curve& c, Side side, cplx z, double t) {
  const cplx zeta = curve_point(c, t);
  if (std::abs(zeta - z) <= 1e-14 * (1.0 + std::abs(z))) {
    fail(ErrorKind::Singular, "Cauchy kernel evaluated at its own node");
  }
  const double sign = side == Side::Interior ? 1.0 : -1.0;
  return sign * curve_tangent(c, t) / (2.0 * kPi * kI * (zeta - z));
}

NormValue cauchy_norm_sq(const Curve& c, cplx z, const QuadratureRule& rule) {
  if (!c.is_bounded()) {
    fail(ErrorKind::UnboundedCurve, "use wedge_cauchy_norm_sq for the wedge boundary");
  }
  const double dist = distance_to_curve(c, z);
  if (dist <= kOnCurveCollar) fail(ErrorKind::Singular, "Cauchy norm requested on the curve");
  double sum = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double term = rule.weights[j] / std::norm(rule.points[j] - z);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return {(sum + comp) / (4.0 * kPi * kPi), dist < 10.0 * rule.max_spacing};
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double wedge_I(double r, double alpha) {
  if (!(r > 0.0)) fail(ErrorKind::Domain, "wedge_I: r must be positive");
  if (!(alpha > 0.0 && alpha < 2.0 * kPi)) {
    fail(ErrorKind::Domain, "wedge_I: alpha must lie in (0, 2 pi)");
  }
  return 1.0 / (r * sinc(kPi - alpha));
}

double wedge_cauchy_norm_sq(double theta, double r, double phi) {
  if (!(theta > 0.0 && theta < kPi / 2)) fail(ErrorKind::Domain, "wedge requires 0 < theta < pi/2");
  if (!(phi > -theta && phi < 2.0 * kPi - theta)) {
    fail(ErrorKind::Domain, "phi must lie in (-theta, 2 pi - theta)");
  }
  if (phi == theta) fail(ErrorKind::Singular, "z lies on the wedge boundary");
  // Angles between z and the rays at +theta and -theta.
  return (wedge_I(r, std::abs(phi - theta)) + wedge_I(r, phi + theta)) / (4.0 * kPi * kPi);
}

double ellipse_cauchy_norm0(double r) {
  if (!(r >= 1.0)) fail(ErrorKind::Domain, "ellipse_cauchy_norm0 requires r >= 1");
  if (r == 1.0) return 1.0 / (2.0 * kPi);
  const double k = std::sqrt(1.0 - 1.0 / (r * r));
  const double bracket = (r * r + 1.0) * specfun::ellint_Pi(1.0 - r * r, k) - specfun::ellint_K(k);
  return bracket / (kPi * kPi * r);
}

SzegoDiag szego_diag(const Curve& c, Side side, const ScalarPoint& p) {
  if (c.is_sampled()) {
    fail(ErrorKind::NoRiemannMap, "szego_diag: sampled curves go through the operator module");
  }
  if (p.is_infinity()) {
    if (side == Side::Exterior && c.is_bounded()) return {0.0, true};
    fail(ErrorKind::SideMismatch, "infinity is not inside the requested domain");
  }
  const cplx z = p.value();
  require_side(c, side, z, false);

  if (const auto* k = c.get_if<Circle>()) {
    const double rho = k->radius;
    const double w2 = std::norm(z - k->center);
    return {rho / (2.0 * kPi * std::abs(w2 - rho * rho)), false};
  }
  if (const auto* w = c.get_if<Wedge>()) {
    const double r = std::abs(z);
    const double phi = wedge_angle(w->theta, z);
    if (side == Side::Interior) {
      return {1.0 / (8.0 * r * w->theta * std::cos(kPi * phi / (2.0 * w->theta))), false};
    }
    const double open = kPi - w->theta;
    return {1.0 / (8.0 * r * open * std::cos(0.5 * kPi * (kPi - phi) / open)), false};
  }
  const double r = c.get_if<Ellipse>()->r;
  const RiemannMapValue m =
      side == Side::Interior ? ellipse_riemann_map(r, z) : ellipse_exterior_map(r, z);
  return {std::abs(m.derivative) / (2.0 * kPi * (1.0 - std::norm(m.value))), false};
}

RiemannMapValue ellipse_riemann_map(double r, cplx z) {
  if (!(r > 1.0)) fail(ErrorKind::Domain, "ellipse_riemann_map requires r > 1");
  if (!(ellipse_level(r, z) < 1.0) || distance_to_curve(Curve::ellipse(r), z) <= kOnCurveCollar) {
    fail(ErrorKind::Domain, "ellipse_riemann_map: z is not inside E_r");
  }
  const EllipseTheta m(r);
  return {m.value(z), m.derivative(z)};
}

RiemannMapValue ellipse_exterior_map(double r, cplx z) {
  if (!(r > 1.0)) fail(ErrorKind::Domain, "ellipse_exterior_map requires r > 1");
  if (!(ellipse_level(r, z) > 1.0) || distance_to_curve(Curve::ellipse(r), z) <= kOnCurveCollar) {
    fail(ErrorKind::Domain, "ellipse_exterior_map: z is not outside E_r");
  }
  const double c = std::sqrt((r - 1.0) * (r + 1.0));
  const cplx s = std::sqrt(z - c) * std::sqrt(z + c);
  const cplx psi = (r + 1.0) / (z + s);
  return {psi, -psi / s};
}

cplx szego_kernel(const Curve& c, Side side, cplx z, cplx w) {
  const MapJet a = map_jet(c, side, z, false);
  const MapJet b = map_jet(c, side, w, true);
  return a.sqrt_deriv * std::conj(b.sqrt_deriv) /
         (2.0 * kPi * (1.0 - a.value * std::conj(b.value)));
}

cplx szego_boundary_kernel(const Curve& c, Side side, cplx z, double t) {
  return szego_kernel(c, side, z, curve_point(c, t));
}

}  // namespace cszego
