// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

namespace cszego {

using cplx = std::complex<double>;

/// A point of the Riemann sphere: a finite complex number or infinity.
class ScalarPoint {
 public:
  ScalarPoint(cplx z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  ScalarPoint(double x) : z_(cplx(x, 0.0)) {}  // NOLINT(google-explicit-constructor)

  static ScalarPoint infinity() { return ScalarPoint(); }

  bool is_infinity() const { return !z_.has_value(); }
  /// The finite value; throws a domain error at infinity.
  cplx value() const;

  friend bool operator==(const ScalarPoint&, const ScalarPoint&) = default;

 private:
  ScalarPoint() = default;
  std::optional<cplx> z_;
};

/// z -> (a z + b) / (c z + d) with a fixed branch of sqrt(ad - bc).
class MoebiusMap {
 public:
  MoebiusMap(cplx a, cplx b, cplx c, cplx d);
  MoebiusMap(cplx a, cplx b, cplx c, cplx d, cplx sqrt_det);

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0, 1.0}; }
  /// w -> (z0 - w) / (1 - conj(z0) w); an automorphism of the unit disc
  /// when |z0| < 1, sending 0 to z0.
  static MoebiusMap disc_automorphism(cplx z0);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx det() const { return a_ * d_ - b_ * c_; }
  cplx sqrt_det() const { return sqrt_det_; }

  ScalarPoint apply(const ScalarPoint& z) const;
  /// Preimage of infinity: -d/c, or infinity for affine maps.
  ScalarPoint pole() const;

  cplx derivative(cplx z) const;
  cplx second_derivative(cplx z) const;
  /// sqrt_det / (c z + d); squares to the derivative.
  cplx sqrt_derivative(cplx z) const;

  MoebiusMap inverse() const;
  /// this o inner, with the product branch of the square root.
  MoebiusMap compose(const MoebiusMap& inner) const;

 private:
  void require_off_pole(cplx z, const char* fn) const;

  cplx a_, b_, c_, d_, sqrt_det_;
};

ScalarPoint mobius_apply(const MoebiusMap& m, const ScalarPoint& z);
cplx mobius_sqrt_deriv(const MoebiusMap& m, cplx z);

struct Circle {
  cplx center;
  double radius;
};

/// x^2/r^2 + y^2 = 1, parametrized (r cos t, sin t).
struct Ellipse {
  double r;
};

/// Boundary of the wedge |arg z| < theta, passing through 0 and infinity.
struct Wedge {
  double theta;
};

/// Node data of a smooth closed curve at t_j = 2 pi j / n.
struct SampledCurve {
  std::vector<cplx> z;
  std::vector<cplx> dz;
  std::vector<cplx> d2z;
  /// Set when the input traversal was clockwise and got reversed.
  bool orientation_reversed = false;

  std::size_t size() const { return z.size(); }
};

class Curve {
 public:
  using Variant = std::variant<Circle, Ellipse, Wedge, SampledCurve>;

  static Curve circle(cplx center, double radius);
  static Curve ellipse(double r);
  static Curve wedge(double theta);
  /// Validates closure data and orientation; clockwise input is reversed.
  static Curve sampled(std::vector<cplx> z, std::vector<cplx> dz, std::vector<cplx> d2z);

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }
  bool is_bounded() const { return !std::holds_alternative<Wedge>(v_); }
  bool is_sampled() const { return std::holds_alternative<SampledCurve>(v_); }

 private:
  explicit Curve(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

cplx curve_point(const Curve& c, double t);
cplx curve_derivative(const Curve& c, double t);
cplx curve_second_derivative(const Curve& c, double t);
/// Unit tangent z'(t) / |z'(t)|.
cplx curve_tangent(const Curve& c, double t);

/// n uniform samples with first and second derivatives; n even.
SampledCurve sample_curve(const Curve& c, int n);

double arc_length(const Curve& c);
double analytic_capacity(const Curve& c);
/// Area of the bounded complementary component (the lens for a wedge).
double enclosed_area(const Curve& c);

struct CapacityReport {
  double sigma;   // arc length
  double kappa;   // analytic capacity
  double area;
  double margin_length;  // sigma - 2 pi kappa
  double margin_area;    // kappa - sqrt(area / pi)
  bool holds_2pi;  // sigma >= 2 pi kappa
  bool holds_AB;   // Ahlfors-Beurling: kappa >= sqrt(area / pi)
  bool equality_2pi;
  bool equality_AB;
};

CapacityReport capacity_inequalities(const Curve& c);

/// Samples M o c at n nodes with chain-rule derivatives.
Curve curve_pushforward(const MoebiusMap& m, const Curve& c, int n);

struct QuadratureRule {
  std::vector<double> nodes;    // parameter values
  std::vector<double> weights;  // |z'(t_j)| * 2 pi / n
  std::vector<cplx> points;
  std::vector<cplx> tangents;   // unit tangents
  double max_spacing = 0.0;     // largest arc-length weight

  std::size_t size() const { return nodes.size(); }
};

/// Periodic trapezoid rule in the curve parameter.
QuadratureRule quadrature(const Curve& c, int n);

enum class Region { Interior, Exterior, OnCurve };

/// Collar within which a point counts as lying on the curve.
inline constexpr double kOnCurveCollar = 1e-12;

Region classify(const Curve& c, const ScalarPoint& z);
double distance_to_curve(const Curve& c, cplx z);
/// Winding number of a bounded curve about z (by argument increments for
/// sampled curves).
int winding_number(const Curve& c, cplx z);
/// Largest distance between two points of a bounded curve (over the nodes
/// for sampled curves).
double curve_diameter(const Curve& c);

}  // namespace cszego
