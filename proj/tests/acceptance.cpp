// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Expected values come from the oracles in oracles.hpp or
// from published closed forms, never from the library under test alone.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cszego/boundary_operator.hpp"
#include "cszego/geometry.hpp"
#include "cszego/kernels.hpp"
#include "cszego/lambda.hpp"
#include "cszego/specfun.hpp"
#include "oracles.hpp"

using namespace cszego;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Fibonacci lattice on the unit sphere, sent to the plane by inverse
// stereographic projection so that the equator lands on |w| = 1.
std::vector<ScalarPoint> sphere_grid(cplx center, double radius, int count) {
  std::vector<ScalarPoint> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double h = 1.0 - (2.0 * k + 1.0) / count;
    const double s = std::sqrt(1.0 - h * h);
    const cplx xy = std::polar(s, golden * k);
    out.emplace_back(center + radius * xy / (1.0 - h));
  }
  return out;
}

Outcome circle_rigidity() {
  double worst = 0.0;
  int count = 0;
  for (double rho : {0.5, 1.0, 3.0}) {
    for (cplx c0 : {cplx(0.0), cplx(1.0, 1.0)}) {
      const Curve c = Curve::circle(c0, rho);
      for (const ScalarPoint& p : sphere_grid(c0, rho, 100)) {
        worst = std::max(worst, std::abs(lambda(c, p).value - 1.0));
        ++count;
      }
    }
  }
  return {worst < 1e-10, fmt("max|Lambda-1| = %.3g over %d points (tol 1e-10)", worst, count)};
}

Outcome moebius_invariance() {
  const Curve e = Curve::ellipse(2.0);
  const std::vector<ScalarPoint> pts = {cplx(0.0),        cplx(0.5, 0.0), cplx(1.0, 0.3),
                                        cplx(-0.8, -0.4), cplx(0.0, 0.6), cplx(3.0, 0.0),
                                        cplx(-2.5, 1.0),  cplx(0.0, 3.0), cplx(1.0, -2.0),
                                        ScalarPoint::infinity()};
  std::vector<double> base;
  for (const ScalarPoint& p : pts) base.push_back(lambda(e, p).value);

  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> box(-6.0, 6.0), unit(-1.0, 1.0);
  double worst = 0.0;
  for (int m = 0; m < 5; ++m) {
    cplx pole;
    do {
      pole = cplx(box(rng), box(rng));
    } while (classify(e, pole) != Region::Exterior || distance_to_curve(e, pole) <= 0.5);
    cplx a, b;
    do {
      a = cplx(unit(rng), unit(rng));
      b = cplx(unit(rng), unit(rng));
    } while (std::abs(-a * pole - b) < 0.1);
    const MoebiusMap phi(a, b, 1.0, -pole);
    const Curve image = curve_pushforward(phi, e, 512);
    const SampledLambdaEvaluator on_image(image);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      worst = std::max(worst, std::abs(on_image(phi.apply(pts[j])).value - base[j]));
    }
  }
  return {worst < 1e-6, fmt("max|Lambda(g,z) - Lambda(Mg,Mz)| = %.3g, 5 maps x 10 points (tol 1e-6)", worst)};
}

// sigma by Gauss-Kronrod on the parametrization, kappa as lim z Psi(z) of
// the exterior map.
double oracle_arc_length(double r) {
  return oracle::integrate(
      [r](double t) { return std::hypot(r * std::sin(t), std::cos(t)); }, 0.0, 2.0 * kPi);
}

double oracle_capacity(double r) {
  const cplx z = 1e8;
  return std::abs(z * ellipse_exterior_map(r, z).value);
}

Outcome ellipse_closed_forms() {
  double worst = 0.0;
  for (double r : {1.2, 2.0, 5.0}) {
    const double norm0 = oracle::ellipse_cauchy_norm_sq(r, 0.0);
    const double s0 = std::abs(ellipse_riemann_map(r, 0.0).derivative) / (2.0 * kPi);
    worst = std::max(worst, std::abs(lambda_ellipse_0(r) - std::sqrt(norm0 / s0)));
    worst = std::max(worst, std::abs(lambda_ellipse_0(r) - lambda(Curve::ellipse(r), 0.0).value));
    const double inf_pipe = std::sqrt(oracle_arc_length(r) / (2.0 * kPi * oracle_capacity(r)));
    worst = std::max(worst, std::abs(lambda_ellipse_inf(r) - inf_pipe));
  }
  return {worst < 1e-9, fmt("max deviation = %.3g over r in {1.2, 2, 5} (tol 1e-9)", worst)};
}

Outcome lambda_at_infinity() {
  double worst = 0.0;
  {
    const Curve c = Curve::circle(cplx(1.0, 1.0), 3.0);
    const double sigma = 2.0 * kPi * 3.0;
    const double l = lambda(c, ScalarPoint::infinity()).value;
    worst = std::max(worst, std::abs(l * l - sigma / (2.0 * kPi * 3.0)));
  }
  for (double r : {1.5, 2.0, 4.0}) {
    const double l = lambda(Curve::ellipse(r), ScalarPoint::infinity()).value;
    worst = std::max(worst,
                     std::abs(l * l - oracle_arc_length(r) / (2.0 * kPi * oracle_capacity(r))));
  }
  // The lens is the image of the wedge under (z - 1)/(z + 1), which sends
  // z = -1 to infinity.
  for (double theta : {kPi / 8, kPi / 4}) {
    const double sigma = 4.0 * theta / std::sin(theta);
    const double kappa = kPi / (2.0 * (kPi - theta));
    // Arc length of the lens from the two image rays.
    const double ray = oracle::integrate_0inf([theta](double x) {
      return 2.0 / std::norm(std::polar(x, theta) + 1.0);
    });
    worst = std::max(worst, std::abs(2.0 * ray - sigma));
    const double l = lambda_wedge(theta, kPi);
    worst = std::max(worst, std::abs(l * l - sigma / (2.0 * kPi * kappa)));
  }
  return {worst < 1e-10, fmt("max|Lambda(inf)^2 - sigma/(2 pi kappa)| = %.3g (tol 1e-10)", worst)};
}

Outcome wedge_consistency() {
  double worst = 0.0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double theta = 0.05 + (kPi / 2 - 0.1) * uni(rng);
    double phi;
    do {
      phi = -theta + 2.0 * kPi * uni(rng);
    } while (std::abs(phi - theta) < 1e-3 || std::abs(phi + theta) < 1e-3);
    const double radius = 0.1 + 5.0 * uni(rng);
    const Curve w = Curve::wedge(theta);
    const cplx z = std::polar(radius, phi);
    const Side side = std::abs(phi) < theta ? Side::Interior : Side::Exterior;
    const double composed =
        std::sqrt(wedge_cauchy_norm_sq(theta, radius, phi) / szego_diag(w, side, z).value);
    worst = std::max(worst, rel(lambda_wedge(theta, phi), composed));
  }
  double worst_i = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double r = 0.2 + 4.0 * uni(rng);
    const double alpha = 0.05 + (2.0 * kPi - 0.1) * uni(rng);
    worst_i = std::max(worst_i, rel(wedge_I(r, alpha), oracle::wedge_I(r, alpha)));
  }
  return {worst < 1e-12 && worst_i < 1e-10,
          fmt("formula vs composition %.3g (tol 1e-12); I(r,alpha) vs quadrature %.3g (tol 1e-10)",
              worst, worst_i)};
}

Outcome asymptotics() {
  const std::vector<double> rs = {1.01, 1.02, 1.03, 1.04, 1.05};
  const AsymptoticFit f0 = asymptotic_check(rs, EllipsePoint::Zero);
  const AsymptoticFit fi = asymptotic_check(rs, EllipsePoint::Infinity);
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  const bool ok = in(f0.c2, 0.029, 0.0335) && in(fi.c2, 0.029, 0.0335) &&
                  in(f0.c3, -0.0335, -0.029) && in(fi.c3, -0.0335, -0.029);
  return {ok, fmt("at 0: c2 = %.5f c3 = %.5f; at inf: c2 = %.5f c3 = %.5f "
                  "(c2 in [0.029, 0.0335], c3 in [-0.0335, -0.029])",
                  f0.c2, f0.c3, fi.c2, fi.c3)};
}

Outcome operator_sandwich() {
  const Curve e = Curve::ellipse(2.0);
  const double grid_sup = cauchy_norm_bounds(e, default_bounds_grid(e)).lower;
  const double n_int = operator_norm(discretize_cauchy(e, Side::Interior, 512));
  const double n_ext = operator_norm(discretize_cauchy(e, Side::Exterior, 512));
  const double fks = std::sqrt(10.0) / 3.0;
  const bool ok = grid_sup <= n_int && n_int <= fks + 1e-6 && std::abs(n_int - n_ext) < 1e-6;
  return {ok, fmt("sup Lambda = %.12f <= |C+| = %.12f <= sqrt(10)/3 = %.12f; |C+|-|C-| = %.3g (tol 1e-6)",
                  grid_sup, n_int, fks, n_int - n_ext)};
}

Outcome kst_szego() {
  const Curve e = Curve::ellipse(2.0);
  const BoundaryOperatorMatrix ce = discretize_cauchy(e, Side::Interior, 256);
  const double s_num = szego_via_kst(ce, kerzman_stein(ce), 0.0).diag;
  // S(0,0) = theta1'(0) / (2 pi theta4(0) c) with c the focal distance.
  const double q = 1.0 / 9.0;
  const double s_ref = oracle::theta(2, 0.0, q).real() * oracle::theta(3, 0.0, q).real() /
                       (2.0 * kPi * std::sqrt(3.0));
  const BoundaryOperatorMatrix cc = discretize_cauchy(Curve::circle(0.0, 1.0), Side::Interior, 256);
  const double s_circ = szego_via_kst(cc, kerzman_stein(cc), 0.0).diag;
  const double d_e = std::abs(s_num - s_ref), d_c = std::abs(s_circ - 1.0 / (2.0 * kPi));
  return {d_e < 1e-6 && d_c < 1e-8,
          fmt("ellipse |S-S_ref| = %.3g (tol 1e-6); circle |S-1/2pi| = %.3g (tol 1e-8)", d_e, d_c)};
}

Outcome berezin() {
  const Curve e = Curve::ellipse(2.0);
  const BoundaryOperatorMatrix c = discretize_cauchy(e, Side::Interior, 512);
  const BoundaryOperatorMatrix a = kerzman_stein(c);
  const KstSolver kst(c, a);
  double worst2 = 0.0, worst1 = 0.0;
  for (cplx z : {cplx(0.0), cplx(0.5, 0.0), cplx(1.0, 0.3)}) {
    const KstSolution s = kst.solve(z);
    // Lambda^2 from an oracle Cauchy norm and the Riemann map.
    const double lam2 = oracle::ellipse_cauchy_norm_sq(2.0, z) / szego_diag(e, Side::Interior, z).value;
    worst2 = std::max(worst2, std::abs(1.0 - berezin_A2(a, s.s) - lam2));
    worst1 = std::max(worst1, std::abs(berezin_A(a, s.s)));
  }
  return {worst2 < 1e-5 && worst1 < 1e-10,
          fmt("|1-<A^2 s,s> - Lambda^2| = %.3g (tol 1e-5); |<A s,s>| = %.3g (tol 1e-10)", worst2,
              worst1)};
}

Outcome bolt_spectrum() {
  const double r = 1.1;
  const BoundaryOperatorMatrix c = discretize_cauchy(Curve::ellipse(r), Side::Interior, 256);
  const BoundaryOperatorMatrix a = kerzman_stein(c);
  const std::vector<double> lam = spectrum_A(a, 8);
  const double ratio = lam[0] * 2.0 * (r + 1.0) / (r - 1.0);
  // Each +-i lambda_l has multiplicity two.
  double pairing = 0.0;
  for (std::size_t l = 0; l + 1 < lam.size(); l += 2) pairing = std::max(pairing, lam[l] - lam[l + 1]);
  const double norm = operator_norm(c);
  const double d = std::abs(lam[0] - std::sqrt(norm * norm - 1.0));
  const bool ok = ratio >= 0.9 && ratio <= 1.1 && pairing < 1e-8 && d < 1e-6;
  return {ok, fmt("lambda1*2(r+1)/(r-1) = %.6f (in [0.9, 1.1]); pairing %.3g (tol 1e-8); "
                  "|lambda1 - sqrt(|C|^2-1)| = %.3g (tol 1e-6)",
                  ratio, pairing, d)};
}

Outcome special_functions() {
  using specfun::Theta;
  double worst = 0.0;
  auto track = [&](double a, double b) { worst = std::max(worst, rel(a, b)); };
  for (int i = 0; i < 10; ++i) {
    const double k = 0.05 + 0.1 * i;
    track(specfun::ellint_K(k), oracle::K(k));
    track(specfun::ellint_E(k), oracle::E(k));
    track(specfun::ellint_Pi(-0.7 * (i + 1), k), oracle::Pi(-0.7 * (i + 1), k));
  }
  for (int i = 0; i < 8; ++i) {
    const double q = 0.01 + 0.1 * i;
    track(specfun::theta1_prime_at0(q), oracle::theta(2, 0.0, q).real() *
                                            oracle::theta(3, 0.0, q).real() *
                                            oracle::theta(4, 0.0, q).real());
  }
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    const double q = specfun::nome(k);
    track(specfun::inverse_nome(q), k);
    track(specfun::inverse_nome(q), oracle::inverse_nome_product(q));
    const double t2 = oracle::theta(2, 0.0, q).real(), t3 = oracle::theta(3, 0.0, q).real();
    track(2.0 * specfun::ellint_K(k) / kPi, t3 * t3);
    track(std::sqrt(k), t2 / t3);
  }
  return {worst < 1e-10, fmt("max relative deviation = %.3g (tol 1e-10)", worst)};
}

Outcome l2_distance() {
  const double r = 2.0;
  const Curve e = Curve::ellipse(r);
  const int n = 512;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    const double w = std::abs(curve_derivative(e, t)) * 2.0 * kPi / n;
    sum += w * std::norm(cauchy_kernel(e, Side::Interior, 0.0, t) -
                         szego_boundary_kernel(e, Side::Interior, 0.0, t));
  }
  const double s00 = szego_diag(e, Side::Interior, 0.0).value;
  const double lam = lambda_ellipse_0(r);
  const double rhs = s00 * (lam * lam - 1.0);
  return {std::abs(sum - rhs) < 1e-8,
          fmt("quadrature %.15g vs S(0,0)(Lambda^2-1) = %.15g, diff %.3g (tol 1e-8)", sum, rhs,
              std::abs(sum - rhs))};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "circle rigidity", 1.0, circle_rigidity},
      {2, "Moebius invariance", 30.0, moebius_invariance},
      {3, "ellipse closed forms", 5.0, ellipse_closed_forms},
      {4, "Lambda at infinity", 1.0, lambda_at_infinity},
      {5, "wedge consistency", 5.0, wedge_consistency},
      {6, "asymptotic coefficients", 2.0, asymptotics},
      {7, "operator sandwich", 60.0, operator_sandwich},
      {8, "KST Szego agreement", 30.0, kst_szego},
      {9, "Berezin identity", 60.0, berezin},
      {10, "bolt spectrum", 60.0, bolt_spectrum},
      {11, "special functions", 2.0, special_functions},
      {12, "L2 distance identity", 2.0, l2_distance},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("threw: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("%s %2d %-24s %s; %.2f s (budget %.0f s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
