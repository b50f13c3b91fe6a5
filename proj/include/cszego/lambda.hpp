// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "cszego/boundary_operator.hpp"
#include "cszego/geometry.hpp"

namespace cszego {

enum class Regime { InteriorBulk, ExteriorBulk, OnCurve, AtInfinity };

std::string_view to_string(Regime r) noexcept;

struct LambdaValue {
  double value;
  Regime regime;
  double accuracy;  // estimated absolute error
};

/// Lambda(c, z) = ||C(z,.)|| / sqrt(S(z,z)), 1 on the curve and
/// sqrt(sigma / (2 pi kappa)) at infinity.
///
/// Canonical curves use the Riemann map for S and quadrature for the Cauchy
/// norm (a fixed rule if given, otherwise refined until stable). Sampled
/// curves go through the Kerzman-Stein-Trummer solve on their own nodes.
LambdaValue lambda(const Curve& c, const ScalarPoint& z, const QuadratureRule* rule = nullptr);

/// Caches both sides' discretizations of a sampled curve.
class SampledLambdaEvaluator {
 public:
  explicit SampledLambdaEvaluator(const Curve& c);

  LambdaValue operator()(const ScalarPoint& z) const;
  const Curve& curve() const { return curve_; }

 private:
  const KstSolver& solver(Side side) const;

  Curve curve_;
  mutable std::unique_ptr<KstSolver> interior_, exterior_;
};

/// Closed form on the wedge |arg z| < theta, independent of |z|.
double lambda_wedge(double theta, double phi);

double lambda_ellipse_0(double r);
double lambda_ellipse_inf(double r);

/// B(theta) = (2/pi) sqrt((pi - theta) theta csc theta), the wedge value at
/// phi = 0.
double wedge_bound_B(double theta);

/// Lambda(M(c), M(z)) with M(c) sampled on n nodes.
LambdaValue lambda_pullback(const MoebiusMap& m, const Curve& c, const ScalarPoint& z, int n);

struct NormBounds {
  double lower;
  std::optional<double> upper;
  ScalarPoint argmax;
  std::size_t evaluated;
};

/// Default search grid: a 41x41 lattice over the enlarged bounding box
/// without a collar around the curve, plus infinity when the capacity is
/// known; a ray of angles for the wedge.
std::vector<ScalarPoint> default_bounds_grid(const Curve& c);

NormBounds cauchy_norm_bounds(const Curve& c, const std::vector<ScalarPoint>& grid);

/// sqrt(1 + ((r-1)/(r+1))^2).
double fks_upper_bound(double r);

enum class EllipsePoint { Zero, Infinity };

struct AsymptoticFit {
  double c2;
  double c3;
};

/// Least-squares line through (r-1, (Lambda-1)/(r-1)^2).
AsymptoticFit asymptotic_check(const std::vector<double>& r_values, EllipsePoint where);

}  // namespace cszego
