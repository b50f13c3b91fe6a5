// SPDX-License-Identifier: Apache-2.0

#include "cszego/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cszego/error.hpp"
#include "cszego/kernels.hpp"
#include "cszego/specfun.hpp"

namespace cszego {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxRefinedNodes = 1 << 22;

struct TrapezoidNorm {
  double value;
  double change;  // difference from the previous refinement level
  bool resolved;  // z is beyond ten node spacings at the final level
};

// (1/4 pi^2) sum |z'_j| dt / |zeta_j - z|^2 with compensated summation.
double norm_sq_at(const Curve& c, cplx z, int n) {
  const double dt = 2.0 * kPi / n;
  double sum = 0.0, comp = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = dt * j;
    const double term = std::abs(curve_derivative(c, t)) * dt / std::norm(curve_point(c, t) - z);
    const double s = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - s) + term : (term - s) + sum;
    sum = s;
  }
  return (sum + comp) / (4.0 * kPi * kPi);
}

// Doubles n until z is ten spacings clear of the curve and two successive
// levels agree.
TrapezoidNorm refined_norm_sq(const Curve& c, cplx z, double dist) {
  const double speed = c.get_if<Circle>() ? c.get_if<Circle>()->radius
                                          : std::max(1.0, c.get_if<Ellipse>()->r);
  int n = 256;
  while (n < kMaxRefinedNodes && 10.0 * speed * 2.0 * kPi / n > dist) n *= 2;
  double prev = norm_sq_at(c, z, n);
  while (true) {
    if (n >= kMaxRefinedNodes) return {prev, std::abs(prev), false};
    n *= 2;
    const double cur = norm_sq_at(c, z, n);
    const double change = std::abs(cur - prev);
    prev = cur;
    if (change <= 1e-14 * cur) return {cur, change, true};
  }
}

double ellipse_k(double r) { return std::sqrt(1.0 - 1.0 / (r * r)); }

Regime regime_of(Region reg) {
  switch (reg) {
    case Region::Interior: return Regime::InteriorBulk;
    case Region::Exterior: return Regime::ExteriorBulk;
    case Region::OnCurve: return Regime::OnCurve;
  }
  return Regime::OnCurve;
}

double wedge_phi(double theta, cplx z) {
  double phi = std::arg(z);
  if (phi < -theta) phi += 2.0 * kPi;
  return phi;
}

}  // namespace

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::InteriorBulk: return "interior";
    case Regime::ExteriorBulk: return "exterior";
    case Regime::OnCurve: return "on-curve";
    case Regime::AtInfinity: return "infinity";
  }
  return "unknown";
}

double lambda_wedge(double theta, double phi) {
  if (!(theta > 0.0 && theta < kPi / 2)) fail(ErrorKind::Domain, "wedge requires 0 < theta < pi/2");
  if (!(phi >= -theta && phi <= 2.0 * kPi - theta)) {
    fail(ErrorKind::Domain, "phi must lie in [-theta, 2 pi - theta]");
  }
  if (phi == theta || phi == -theta || phi == 2.0 * kPi - theta) return 1.0;
  const double sum =
      1.0 / sinc(kPi - std::abs(phi - theta)) + 1.0 / sinc(kPi - (phi + theta));
  if (std::abs(phi) < theta) {
    return std::sqrt(2.0 * theta / (kPi * kPi) * sum * std::cos(kPi * phi / (2.0 * theta)));
  }
  const double open = kPi - theta;
  return std::sqrt(2.0 * open / (kPi * kPi) * sum * std::cos(0.5 * kPi * (kPi - phi) / open));
}

double wedge_bound_B(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2)) fail(ErrorKind::Domain, "wedge requires 0 < theta < pi/2");
  return 2.0 / kPi * std::sqrt((kPi - theta) * theta / std::sin(theta));
}

double lambda_ellipse_0(double r) {
  if (!(r >= 1.0)) fail(ErrorKind::Domain, "lambda_ellipse_0 requires r >= 1");
  if (r == 1.0) return 1.0;
  const double k = ellipse_k(r);
  const double q = std::pow((r - 1.0) / (r + 1.0), 2);
  const double t2 = specfun::theta(specfun::Theta::Two, 0.0, q).real();
  const double t3 = specfun::theta(specfun::Theta::Three, 0.0, q).real();
  const double bracket = (r * r + 1.0) * specfun::ellint_Pi(1.0 - r * r, k) - specfun::ellint_K(k);
  return std::sqrt(2.0 / kPi * k * bracket / (t2 * t3));
}

double lambda_ellipse_inf(double r) {
  if (!(r >= 1.0)) fail(ErrorKind::Domain, "lambda_ellipse_inf requires r >= 1");
  if (r == 1.0) return 1.0;
  return std::sqrt(4.0 * r / (kPi * (r + 1.0)) * specfun::ellint_E(ellipse_k(r)));
}

double fks_upper_bound(double r) {
  if (!(r >= 1.0)) fail(ErrorKind::Domain, "fks_upper_bound requires r >= 1");
  const double rho = (r - 1.0) / (r + 1.0);
  return std::sqrt(1.0 + rho * rho);
}

SampledLambdaEvaluator::SampledLambdaEvaluator(const Curve& c) : curve_(c) {
  if (!c.is_sampled()) fail(ErrorKind::UnsupportedParameter, "evaluator expects a sampled curve");
}

const KstSolver& SampledLambdaEvaluator::solver(Side side) const {
  auto& slot = side == Side::Interior ? interior_ : exterior_;
  if (!slot) {
    const int n = static_cast<int>(curve_.get_if<SampledCurve>()->size());
    const BoundaryOperatorMatrix cm = discretize_cauchy(curve_, side, n);
    slot = std::make_unique<KstSolver>(cm, kerzman_stein(cm));
  }
  return *slot;
}

LambdaValue SampledLambdaEvaluator::operator()(const ScalarPoint& p) const {
  if (p.is_infinity()) {
    const double kappa = analytic_capacity(curve_);  // throws: unknown for sampled curves
    return {std::sqrt(arc_length(curve_) / (2.0 * kPi * kappa)), Regime::AtInfinity, 0.0};
  }
  const Region reg = classify(curve_, p);
  if (reg == Region::OnCurve) return {1.0, Regime::OnCurve, 0.0};
  const Side side = reg == Region::Interior ? Side::Interior : Side::Exterior;
  const KstSolution sol = solver(side).solve(p.value());
  const double value = std::sqrt(sol.cauchy_norm_sq / sol.diag);
  return {value, regime_of(reg), 0.5 * value * sol.accuracy / sol.diag};
}

LambdaValue lambda(const Curve& c, const ScalarPoint& p, const QuadratureRule* rule) {
  if (c.is_sampled()) {
    if (rule && rule->size() != c.get_if<SampledCurve>()->size()) {
      fail(ErrorKind::UnsupportedParameter, "rule does not match the sampled curve's nodes");
    }
    return SampledLambdaEvaluator(c)(p);
  }
  if (const auto* w = c.get_if<Wedge>()) {
    if (p.is_infinity() || p.value() == cplx(0.0)) return {1.0, Regime::OnCurve, 0.0};
    const Region reg = classify(c, p);
    if (reg == Region::OnCurve) return {1.0, Regime::OnCurve, 0.0};
    return {lambda_wedge(w->theta, wedge_phi(w->theta, p.value())), regime_of(reg), 1e-15};
  }
  if (p.is_infinity()) {
    const double v = std::sqrt(arc_length(c) / (2.0 * kPi * analytic_capacity(c)));
    return {v, Regime::AtInfinity, 1e-15 * v};
  }
  const cplx z = p.value();
  const double dist = distance_to_curve(c, z);
  if (dist <= kOnCurveCollar) return {1.0, Regime::OnCurve, 0.0};
  const Region reg = classify(c, p);
  const Side side = reg == Region::Interior ? Side::Interior : Side::Exterior;
  const double s = szego_diag(c, side, z).value;

  double norm_sq, change;
  if (rule) {
    const NormValue nv = cauchy_norm_sq(c, z, *rule);
    norm_sq = nv.value;
    change = nv.near_boundary ? norm_sq : 1e-14 * norm_sq;
  } else {
    const TrapezoidNorm tn = refined_norm_sq(c, z, dist);
    norm_sq = tn.value;
    change = std::max(tn.change, 1e-15 * norm_sq);
  }
  const double value = std::sqrt(norm_sq / s);
  return {value, regime_of(reg), 0.5 * value * change / norm_sq};
}

LambdaValue lambda_pullback(const MoebiusMap& m, const Curve& c, const ScalarPoint& z, int n) {
  const Curve image = curve_pushforward(m, c, n);
  return SampledLambdaEvaluator(image)(m.apply(z));
}

std::vector<ScalarPoint> default_bounds_grid(const Curve& c) {
  std::vector<ScalarPoint> grid;
  if (const auto* w = c.get_if<Wedge>()) {
    // Lambda is radius independent on the wedge: scan angles on |z| = 1.
    constexpr int kRays = 400;
    const double span = 2.0 * kPi;
    grid.emplace_back(1.0);
    for (int k = 0; k < kRays; ++k) {
      grid.emplace_back(std::polar(1.0, -w->theta + span * (k + 0.5) / kRays));
    }
    return grid;
  }
  double xmin, xmax, ymin, ymax;
  if (const auto* k = c.get_if<Circle>()) {
    xmin = k->center.real() - k->radius;
    xmax = k->center.real() + k->radius;
    ymin = k->center.imag() - k->radius;
    ymax = k->center.imag() + k->radius;
  } else if (const auto* e = c.get_if<Ellipse>()) {
    xmin = -e->r;
    xmax = e->r;
    ymin = -1.0;
    ymax = 1.0;
  } else {
    const auto& s = *c.get_if<SampledCurve>();
    xmin = xmax = s.z[0].real();
    ymin = ymax = s.z[0].imag();
    for (const cplx& z : s.z) {
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
      ymin = std::min(ymin, z.imag());
      ymax = std::max(ymax, z.imag());
    }
  }
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double hx = 0.75 * (xmax - xmin), hy = 0.75 * (ymax - ymin);
  const double collar = 1e-6 * curve_diameter(c);
  constexpr int kSide = 41;
  for (int i = 0; i < kSide; ++i) {
    for (int j = 0; j < kSide; ++j) {
      const cplx z(cx - hx + 2.0 * hx * j / (kSide - 1), cy - hy + 2.0 * hy * i / (kSide - 1));
      if (distance_to_curve(c, z) > collar) grid.emplace_back(z);
    }
  }
  if (!c.is_sampled()) grid.push_back(ScalarPoint::infinity());
  return grid;
}

NormBounds cauchy_norm_bounds(const Curve& c, const std::vector<ScalarPoint>& grid) {
  std::unique_ptr<SampledLambdaEvaluator> sampled;
  if (c.is_sampled()) sampled = std::make_unique<SampledLambdaEvaluator>(c);
  NormBounds out{0.0, std::nullopt, ScalarPoint::infinity(), 0};
  bool first = true;
  for (const ScalarPoint& p : grid) {
    const LambdaValue v = sampled ? (*sampled)(p) : lambda(c, p);
    ++out.evaluated;
    if (first || v.value > out.lower) {
      out.lower = v.value;
      out.argmax = p;
      first = false;
    }
  }
  if (const auto* e = c.get_if<Ellipse>()) out.upper = fks_upper_bound(e->r);
  return out;
}

AsymptoticFit asymptotic_check(const std::vector<double>& r_values, EllipsePoint where) {
  if (r_values.size() < 4) {
    fail(ErrorKind::InsufficientData, "asymptotic_check needs at least 4 radii, got " +
                                          std::to_string(r_values.size()));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double r : r_values) {
    if (!(r > 1.0 && r <= 1.2)) fail(ErrorKind::Domain, "asymptotic_check: r must lie in (1, 1.2]");
    const double x = r - 1.0;
    const double lam = where == EllipsePoint::Zero ? lambda_ellipse_0(r) : lambda_ellipse_inf(r);
    const double y = (lam - 1.0) / (x * x);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(r_values.size());
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) fail(ErrorKind::InsufficientData, "asymptotic_check: radii are not distinct");
  const double slope = (n * sxy - sx * sy) / den;
  return {(sy - slope * sx) / n, slope};
}

}  // namespace cszego
