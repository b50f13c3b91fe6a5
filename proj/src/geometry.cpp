// SPDX-License-Identifier: Apache-2.0

#include "cszego/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cszego/error.hpp"
#include "cszego/specfun.hpp"

namespace cszego {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_even(int n, int min_n, const char* what) {
  if (n < min_n || n % 2 != 0) {
    fail(ErrorKind::Parity, std::string(what) + ": node count must be even and >= " +
                                std::to_string(min_n) + ", got " + std::to_string(n));
  }
}

std::size_t sampled_index(const SampledCurve& s, double t) {
  const auto n = static_cast<double>(s.size());
  double u = std::fmod(t, kTwoPi);
  if (u < 0.0) u += kTwoPi;
  const double j = std::round(u * n / kTwoPi);
  if (std::abs(u - j * kTwoPi / n) > 1e-9) {
    fail(ErrorKind::UnsupportedParameter,
         "sampled curves are only evaluated at their nodes (t = 2 pi j / n)");
  }
  return static_cast<std::size_t>(j) % s.size();
}

double signed_area(const std::vector<cplx>& z, const std::vector<cplx>& dz) {
  const double dt = kTwoPi / static_cast<double>(z.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) acc += (std::conj(z[j]) * dz[j]).imag();
  return 0.5 * acc * dt;
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_cross(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool polygon_is_simple(const std::vector<cplx>& z) {
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = z[i], b = z[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      if (segments_cross(a, b, z[j], z[(j + 1) % n])) return false;
    }
  }
  return true;
}

double ray_distance(cplx p, cplx dir) {
  const cplx local = p * std::conj(dir);
  return local.real() >= 0.0 ? std::abs(local.imag()) : std::abs(p);
}

// Wedge boundary: t < 0 runs in along arg = theta, t > 0 out along -theta.
cplx wedge_dir(const Wedge& w, double t) {
  return t < 0.0 ? std::polar(1.0, w.theta) : std::polar(1.0, -w.theta);
}

struct LensData {
  double sigma, kappa, area;
};

LensData lens_of(const Wedge& w) {
  const double th = w.theta;
  const double s = std::sin(th);
  return {4.0 * th / s, kPi / (2.0 * (kPi - th)), 2.0 * (th - s * std::cos(th)) / (s * s)};
}

double ellipse_distance(double r, cplx z) {
  auto pt = [r](double t) { return cplx(r * std::cos(t), std::sin(t)); };
  auto d1 = [r](double t) { return cplx(-r * std::sin(t), std::cos(t)); };
  constexpr int kSeeds = 128;
  double best = std::abs(pt(0.0) - z);
  double best_t = 0.0;
  for (int j = 1; j < kSeeds; ++j) {
    const double t = kTwoPi * j / kSeeds;
    const double d = std::abs(pt(t) - z);
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  // Newton on the stationarity condition Re((p - z) conj p') = 0.
  double t = best_t;
  for (int it = 0; it < 30; ++it) {
    const cplx e = pt(t) - z;
    const cplx p1 = d1(t);
    const double g = (e * std::conj(p1)).real();
    const double gp = std::norm(p1) - (e * std::conj(pt(t))).real();
    if (gp <= 0.0) break;
    const double step = std::clamp(g / gp, -0.1, 0.1);
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return std::min(best, std::abs(pt(t) - z));
}

double sampled_distance(const SampledCurve& s, cplx z) {
  std::size_t jbest = 0;
  double best = std::abs(s.z[0] - z);
  for (std::size_t j = 1; j < s.size(); ++j) {
    const double d = std::abs(s.z[j] - z);
    if (d < best) {
      best = d;
      jbest = j;
    }
  }
  // Refine on the local quadratic Taylor model within one step of the node.
  const double h = kTwoPi / static_cast<double>(s.size());
  const cplx z0 = s.z[jbest], z1 = s.dz[jbest], z2 = s.d2z[jbest];
  double u = 0.0;
  for (int it = 0; it < 20; ++it) {
    const cplx e = z0 + u * z1 + 0.5 * u * u * z2 - z;
    const cplx de = z1 + u * z2;
    const double g = (e * std::conj(de)).real();
    const double gp = std::norm(de) + (e * std::conj(z2)).real();
    if (gp <= 0.0) break;
    const double next = std::clamp(u - g / gp, -h, h);
    if (std::abs(next - u) < 1e-16) break;
    u = next;
  }
  return std::min(best, std::abs(z0 + u * z1 + 0.5 * u * u * z2 - z));
}

int sampled_winding(const std::vector<cplx>& z, cplx p) {
  double total = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const cplx a = z[j] - p, b = z[(j + 1) % z.size()] - p;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace

cplx ScalarPoint::value() const {
  if (!z_) fail(ErrorKind::Domain, "point at infinity has no finite value");
  return *z_;
}

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d)
    : MoebiusMap(a, b, c, d, std::sqrt(a * d - b * c)) {}

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d, cplx sqrt_det)
    : a_(a), b_(b), c_(c), d_(d), sqrt_det_(sqrt_det) {
  const cplx det = a * d - b * c;
  if (det == cplx(0.0) || !std::isfinite(std::abs(det))) {
    fail(ErrorKind::Domain, "Moebius map with ad - bc = 0");
  }
  if (std::abs(sqrt_det * sqrt_det - det) > 1e-12 * std::abs(det)) {
    fail(ErrorKind::Domain, "sqrt_det does not square to ad - bc");
  }
}

MoebiusMap MoebiusMap::disc_automorphism(cplx z0) {
  return {-1.0, z0, -std::conj(z0), 1.0};
}

ScalarPoint MoebiusMap::apply(const ScalarPoint& z) const {
  if (z.is_infinity()) {
    if (c_ == cplx(0.0)) return ScalarPoint::infinity();
    return a_ / c_;
  }
  const cplx w = z.value();
  const cplx den = c_ * w + d_;
  if (den == cplx(0.0)) return ScalarPoint::infinity();
  return (a_ * w + b_) / den;
}

ScalarPoint MoebiusMap::pole() const {
  if (c_ == cplx(0.0)) return ScalarPoint::infinity();
  return -d_ / c_;
}

void MoebiusMap::require_off_pole(cplx z, const char* fn) const {
  const cplx den = c_ * z + d_;
  if (std::abs(den) <= 1e-15 * (std::abs(c_ * z) + std::abs(d_))) {
    fail(ErrorKind::Pole, std::string(fn) + ": evaluation at the pole of the Moebius map");
  }
}

cplx MoebiusMap::derivative(cplx z) const {
  require_off_pole(z, "derivative");
  const cplx den = c_ * z + d_;
  return det() / (den * den);
}

cplx MoebiusMap::second_derivative(cplx z) const {
  require_off_pole(z, "second_derivative");
  const cplx den = c_ * z + d_;
  return -2.0 * c_ * det() / (den * den * den);
}

cplx MoebiusMap::sqrt_derivative(cplx z) const {
  require_off_pole(z, "sqrt_derivative");
  return sqrt_det_ / (c_ * z + d_);
}

MoebiusMap MoebiusMap::inverse() const { return {d_, -b_, -c_, a_, sqrt_det_}; }

MoebiusMap MoebiusMap::compose(const MoebiusMap& in) const {
  return {a_ * in.a_ + b_ * in.c_, a_ * in.b_ + b_ * in.d_, c_ * in.a_ + d_ * in.c_,
          c_ * in.b_ + d_ * in.d_, sqrt_det_ * in.sqrt_det_};
}

ScalarPoint mobius_apply(const MoebiusMap& m, const ScalarPoint& z) { return m.apply(z); }

cplx mobius_sqrt_deriv(const MoebiusMap& m, cplx z) { return m.sqrt_derivative(z); }

Curve Curve::circle(cplx center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    fail(ErrorKind::Domain, "circle radius must be positive");
  }
  return Curve(Circle{center, radius});
}

Curve Curve::ellipse(double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) fail(ErrorKind::Domain, "ellipse requires r >= 1");
  return Curve(Ellipse{r});
}

Curve Curve::wedge(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2)) {
    fail(ErrorKind::Domain, "wedge requires 0 < theta < pi/2");
  }
  return Curve(Wedge{theta});
}

Curve Curve::sampled(std::vector<cplx> z, std::vector<cplx> dz, std::vector<cplx> d2z) {
  const std::size_t n = z.size();
  if (dz.size() != n || d2z.size() != n) {
    fail(ErrorKind::Domain, "sampled curve arrays differ in length");
  }
  require_even(static_cast<int>(n), 4, "sampled curve");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(std::abs(z[j])) || !std::isfinite(std::abs(dz[j])) ||
        !std::isfinite(std::abs(d2z[j]))) {
      fail(ErrorKind::Domain, "sampled curve has non-finite data");
    }
    if (dz[j] == cplx(0.0)) fail(ErrorKind::Domain, "sampled curve has vanishing z'");
  }
  if (!polygon_is_simple(z)) fail(ErrorKind::Domain, "sampled curve self-intersects");

  SampledCurve s;
  if (signed_area(z, dz) < 0.0) {
    // t -> -t: node j takes the data of node n - j.
    s.z.resize(n);
    s.dz.resize(n);
    s.d2z.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = (n - j) % n;
      s.z[j] = z[k];
      s.dz[j] = -dz[k];
      s.d2z[j] = d2z[k];
    }
    s.orientation_reversed = true;
  } else {
    s.z = std::move(z);
    s.dz = std::move(dz);
    s.d2z = std::move(d2z);
  }
  return Curve(std::move(s));
}

cplx curve_point(const Curve& c, double t) {
  return std::visit(
      overloaded{
          [t](const Circle& k) { return k.center + std::polar(k.radius, t); },
          [t](const Ellipse& e) { return cplx(e.r * std::cos(t), std::sin(t)); },
          [t](const Wedge& w) { return std::abs(t) * wedge_dir(w, t); },
          [t](const SampledCurve& s) { return s.z[sampled_index(s, t)]; },
      },
      c.variant());
}

cplx curve_derivative(const Curve& c, double t) {
  return std::visit(
      overloaded{
          [t](const Circle& k) { return cplx(0.0, 1.0) * std::polar(k.radius, t); },
          [t](const Ellipse& e) { return cplx(-e.r * std::sin(t), std::cos(t)); },
          [t](const Wedge& w) {
            if (t == 0.0) fail(ErrorKind::UnsupportedParameter, "wedge corner has no tangent");
            return t < 0.0 ? -wedge_dir(w, t) : wedge_dir(w, t);
          },
          [t](const SampledCurve& s) { return s.dz[sampled_index(s, t)]; },
      },
      c.variant());
}

cplx curve_second_derivative(const Curve& c, double t) {
  return std::visit(
      overloaded{
          [t](const Circle& k) { return -std::polar(k.radius, t); },
          [t](const Ellipse& e) { return cplx(-e.r * std::cos(t), -std::sin(t)); },
          [t](const Wedge&) {
            if (t == 0.0) fail(ErrorKind::UnsupportedParameter, "wedge corner is singular");
            return cplx(0.0);
          },
          [t](const SampledCurve& s) { return s.d2z[sampled_index(s, t)]; },
      },
      c.variant());
}

cplx curve_tangent(const Curve& c, double t) {
  const cplx d = curve_derivative(c, t);
  return d / std::abs(d);
}

SampledCurve sample_curve(const Curve& c, int n) {
  if (const auto* s = c.get_if<SampledCurve>()) {
    if (static_cast<std::size_t>(n) != s->size()) {
      fail(ErrorKind::UnsupportedParameter,
           "sampled curve has " + std::to_string(s->size()) + " nodes; resampling is not supported");
    }
    return *s;
  }
  if (!c.is_bounded()) fail(ErrorKind::UnboundedCurve, "the wedge boundary is never discretized");
  require_even(n, 4, "sample_curve");
  SampledCurve out;
  out.z.resize(n);
  out.dz.resize(n);
  out.d2z.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    out.z[j] = curve_point(c, t);
    out.dz[j] = curve_derivative(c, t);
    out.d2z[j] = curve_second_derivative(c, t);
  }
  return out;
}

double arc_length(const Curve& c) {
  return std::visit(
      overloaded{
          [](const Circle& k) { return kTwoPi * k.radius; },
          [](const Ellipse& e) {
            return 4.0 * e.r * specfun::ellint_E(std::sqrt(1.0 - 1.0 / (e.r * e.r)));
          },
          [](const Wedge&) -> double {
            fail(ErrorKind::UnboundedCurve, "arc length of the wedge boundary is infinite");
          },
          [](const SampledCurve& s) {
            double acc = 0.0;
            for (const cplx& d : s.dz) acc += std::abs(d);
            return acc * kTwoPi / static_cast<double>(s.size());
          },
      },
      c.variant());
}

double analytic_capacity(const Curve& c) {
  return std::visit(
      overloaded{
          [](const Circle& k) { return k.radius; },
          [](const Ellipse& e) { return 0.5 * (e.r + 1.0); },
          [](const Wedge& w) { return lens_of(w).kappa; },
          [](const SampledCurve&) -> double {
            fail(ErrorKind::CapacityUnknown, "analytic capacity of a sampled curve is unknown");
          },
      },
      c.variant());
}

double enclosed_area(const Curve& c) {
  return std::visit(
      overloaded{
          [](const Circle& k) { return kPi * k.radius * k.radius; },
          [](const Ellipse& e) { return kPi * e.r; },
          [](const Wedge& w) { return lens_of(w).area; },
          [](const SampledCurve& s) { return signed_area(s.z, s.dz); },
      },
      c.variant());
}

CapacityReport capacity_inequalities(const Curve& c) {
  CapacityReport rep{};
  rep.kappa = analytic_capacity(c);
  if (const auto* w = c.get_if<Wedge>()) {
    const LensData lens = lens_of(*w);
    rep.sigma = lens.sigma;
    rep.area = lens.area;
  } else {
    rep.sigma = arc_length(c);
    rep.area = enclosed_area(c);
  }
  rep.margin_length = rep.sigma - kTwoPi * rep.kappa;
  rep.margin_area = rep.kappa - std::sqrt(rep.area / kPi);
  rep.holds_2pi = rep.margin_length >= -1e-12 * rep.sigma;
  rep.holds_AB = rep.margin_area >= -1e-12 * rep.kappa;
  rep.equality_2pi = std::abs(rep.margin_length) <= 1e-12 * rep.sigma;
  rep.equality_AB = std::abs(rep.margin_area) <= 1e-12 * rep.kappa;
  return rep;
}

Curve curve_pushforward(const MoebiusMap& m, const Curve& c, int n) {
  if (!c.is_bounded()) fail(ErrorKind::UnboundedCurve, "cannot sample the wedge boundary");
  const SampledCurve src = sample_curve(c, n);
  const ScalarPoint pole = m.pole();
  if (!pole.is_infinity()) {
    const cplx p = pole.value();
    double dmin = std::abs(src.z[0] - p);
    for (const cplx& z : src.z) dmin = std::min(dmin, std::abs(z - p));
    if (dmin <= 1e-9 * curve_diameter(c)) {
      fail(ErrorKind::PoleOnCurve, "pole of the Moebius map lies on the curve");
    }
  }
  std::vector<cplx> z(src.size()), dz(src.size()), d2z(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const cplx w = src.z[j];
    const cplx d1 = m.derivative(w);
    z[j] = m.apply(w).value();
    dz[j] = d1 * src.dz[j];
    d2z[j] = m.second_derivative(w) * src.dz[j] * src.dz[j] + d1 * src.d2z[j];
  }
  return Curve::sampled(std::move(z), std::move(dz), std::move(d2z));
}

QuadratureRule quadrature(const Curve& c, int n) {
  if (!c.is_bounded()) {
    fail(ErrorKind::UnboundedCurve, "the wedge boundary uses closed forms, not quadrature");
  }
  require_even(n, 16, "quadrature");
  const SampledCurve s = sample_curve(c, n);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.points = s.z;
  rule.tangents.resize(n);
  const double dt = kTwoPi / n;
  for (int j = 0; j < n; ++j) {
    const double speed = std::abs(s.dz[j]);
    rule.nodes[j] = dt * j;
    rule.weights[j] = speed * dt;
    rule.tangents[j] = s.dz[j] / speed;
    rule.max_spacing = std::max(rule.max_spacing, rule.weights[j]);
  }
  return rule;
}

double distance_to_curve(const Curve& c, cplx z) {
  return std::visit(
      overloaded{
          [z](const Circle& k) { return std::abs(std::abs(z - k.center) - k.radius); },
          [z](const Ellipse& e) { return ellipse_distance(e.r, z); },
          [z](const Wedge& w) {
            return std::min(ray_distance(z, std::polar(1.0, w.theta)),
                            ray_distance(z, std::polar(1.0, -w.theta)));
          },
          [z](const SampledCurve& s) { return sampled_distance(s, z); },
      },
      c.variant());
}

int winding_number(const Curve& c, cplx z) {
  return std::visit(
      overloaded{
          [z](const Circle& k) { return std::abs(z - k.center) < k.radius ? 1 : 0; },
          [z](const Ellipse& e) {
            const double x = z.real() / e.r, y = z.imag();
            return x * x + y * y < 1.0 ? 1 : 0;
          },
          [](const Wedge&) -> int {
            fail(ErrorKind::UnboundedCurve, "winding number about an unbounded curve");
          },
          [z](const SampledCurve& s) { return sampled_winding(s.z, z); },
      },
      c.variant());
}

Region classify(const Curve& c, const ScalarPoint& p) {
  if (p.is_infinity()) return c.is_bounded() ? Region::Exterior : Region::OnCurve;
  const cplx z = p.value();
  if (distance_to_curve(c, z) <= kOnCurveCollar) return Region::OnCurve;
  if (const auto* w = c.get_if<Wedge>()) {
    return std::abs(std::arg(z)) < w->theta ? Region::Interior : Region::Exterior;
  }
  return winding_number(c, z) == 1 ? Region::Interior : Region::Exterior;
}

double curve_diameter(const Curve& c) {
  return std::visit(
      overloaded{
          [](const Circle& k) { return 2.0 * k.radius; },
          [](const Ellipse& e) { return 2.0 * e.r; },
          [](const Wedge&) -> double {
            fail(ErrorKind::UnboundedCurve, "the wedge boundary has infinite diameter");
          },
          [](const SampledCurve& s) {
            double best = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i)
              for (std::size_t j = i + 1; j < s.size(); ++j)
                best = std::max(best, std::abs(s.z[i] - s.z[j]));
            return best;
          },
      },
      c.variant());
}

}  // namespace cszego
