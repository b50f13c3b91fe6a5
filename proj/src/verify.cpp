// SPDX-License-Identifier: Apache-2.0

#include "cszego/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cszego/boundary_operator.hpp"
#include "cszego/geometry.hpp"
#include "cszego/kernels.hpp"
#include "cszego/lambda.hpp"
#include "cszego/specfun.hpp"

namespace cszego {
namespace {

constexpr double kPi = std::numbers::pi;

class Report {
 public:
  void close(const std::string& suite, const std::string& name, double value, double reference,
             double tol) {
    const double margin = tol - std::abs(value - reference);
    out_.push_back({suite, name, value, reference, tol, margin, margin >= 0.0});
  }

  void relclose(const std::string& suite, const std::string& name, double value,
                double reference, double rtol) {
    close(suite, name, value, reference, rtol * std::abs(reference));
  }

  // value <= bound + slack
  void at_most(const std::string& suite, const std::string& name, double value, double bound,
               double slack = 0.0) {
    const double margin = bound + slack - value;
    out_.push_back({suite, name, value, bound, slack, margin, margin >= 0.0});
  }

  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::vector<CheckResult> out_;
};

void specfun_checks(Report& rep) {
  using specfun::Theta;
  for (double q : {0.01, 1.0 / 9.0, 0.5}) {
    const double prod = specfun::theta(Theta::Two, 0.0, q).real() *
                        specfun::theta(Theta::Three, 0.0, q).real() *
                        specfun::theta(Theta::Four, 0.0, q).real();
    rep.relclose("specfun", "jacobi-identity q=" + std::to_string(q),
                 specfun::theta1_prime_at0(q), prod, 1e-12);
  }
  for (double k : {0.1, 0.5, 0.9}) {
    const double q = specfun::nome(k);
    rep.relclose("specfun", "nome-roundtrip k=" + std::to_string(k), specfun::inverse_nome(q), k,
                 1e-12);
    const double t3 = specfun::theta(Theta::Three, 0.0, q).real();
    rep.relclose("specfun", "2K/pi=theta3^2 k=" + std::to_string(k),
                 2.0 * specfun::ellint_K(k) / kPi, t3 * t3, 1e-10);
  }
  rep.close("specfun", "Pi(-1,0)", specfun::ellint_Pi(-1.0, 0.0), kPi / (2.0 * std::sqrt(2.0)),
            1e-14);
}

void circle_checks(Report& rep) {
  const Curve c = Curve::circle({1.0, 1.0}, 3.0);
  for (cplx z : {cplx(1.0, 1.0), cplx(2.5, -0.3), cplx(6.0, 2.0), cplx(-40.0, 7.0)}) {
    rep.close("circle", "lambda=1 at " + std::to_string(z.real()) + "," + std::to_string(z.imag()),
              lambda(c, z).value, 1.0, 1e-10);
  }
  const CapacityReport cap = capacity_inequalities(c);
  rep.close("circle", "sigma=2 pi kappa", cap.margin_length, 0.0, 1e-12 * cap.sigma);
}

void wedge_checks(Report& rep) {
  for (double theta : {kPi / 8, kPi / 4, 1.3}) {
    const Curve w = Curve::wedge(theta);
    for (double phi : {0.0, 0.5 * theta, -0.8 * theta, kPi, 1.5 * kPi}) {
      const cplx z = std::polar(1.7, phi);
      const Side side = std::abs(phi) < theta ? Side::Interior : Side::Exterior;
      // Closed form against the transformation law through the explicit map.
      const double closed = szego_diag(w, side, z).value;
      const double mapped = szego_kernel(w, side, z, z).real();
      const std::string tag = "theta=" + std::to_string(theta) + " phi=" + std::to_string(phi);
      rep.relclose("wedge", "szego " + tag, closed, mapped, 1e-12);
      const double composed =
          std::sqrt(wedge_cauchy_norm_sq(theta, std::abs(z), phi < -theta ? phi + 2 * kPi : phi) /
                    closed);
      rep.relclose("wedge", "lambda " + tag, lambda_wedge(theta, phi < -theta ? phi + 2 * kPi : phi),
                   composed, 1e-12);
    }
    rep.relclose("wedge", "B(theta)=Lambda(phi=0) theta=" + std::to_string(theta),
                 lambda_wedge(theta, 0.0), wedge_bound_B(theta), 1e-12);
  }
}

void ellipse_checks(Report& rep) {
  for (double r : {1.5, 2.0, 3.0}) {
    const Curve e = Curve::ellipse(r);
    const std::string tag = "r=" + std::to_string(r);
    const double l0 = lambda_ellipse_0(r);
    const double linf = lambda_ellipse_inf(r);
    rep.close("ellipse", "lambda(0) closed form vs quadrature " + tag, lambda(e, 0.0).value, l0,
              1e-9);
    rep.close("ellipse", "lambda(inf)^2 = sigma/(2 pi kappa) " + tag, linf * linf,
              arc_length(e) / (2.0 * kPi * analytic_capacity(e)), 1e-10);
    rep.at_most("ellipse", "lambda(inf) < lambda(0) " + tag, linf, l0);
    const CapacityReport cap = capacity_inequalities(e);
    rep.at_most("ellipse", "2 pi kappa <= sigma " + tag, 2.0 * kPi * cap.kappa, cap.sigma, 1e-12);
    rep.at_most("ellipse", "sqrt(A/pi) <= kappa " + tag, std::sqrt(cap.area / kPi), cap.kappa,
                1e-12);
  }
  const AsymptoticFit f0 = asymptotic_check({1.01, 1.02, 1.03, 1.04, 1.05}, EllipsePoint::Zero);
  const AsymptoticFit fi = asymptotic_check({1.01, 1.02, 1.03, 1.04, 1.05}, EllipsePoint::Infinity);
  rep.close("ellipse", "c2 at 0", f0.c2, 0.03125, 0.0025);
  rep.close("ellipse", "c2 at inf", fi.c2, 0.03125, 0.0025);
}

void operator_checks(Report& rep, VerifyLevel level) {
  {
    const BoundaryOperatorMatrix c = discretize_cauchy(Curve::circle(0.0, 1.0), Side::Interior, 128);
    const BoundaryOperatorMatrix a = kerzman_stein(c);
    rep.at_most("operator", "circle max|A|", a.entries.cwiseAbs().maxCoeff(), 1e-10);
    rep.close("operator", "circle S(0,0)", szego_via_kst(c, a, 0.0).diag, 1.0 / (2.0 * kPi), 1e-8);
  }
  {
    const double r = 2.0;
    const Curve e = Curve::ellipse(r);
    const BoundaryOperatorMatrix c = discretize_cauchy(e, Side::Interior, 256);
    const BoundaryOperatorMatrix a = kerzman_stein(c);
    const KstSolver kst(c, a);
    const KstSolution s0 = kst.solve(0.0);
    rep.close("operator", "ellipse S(0,0) n=256", s0.diag, szego_diag(e, Side::Interior, 0.0).value,
              1e-6);
    for (cplx z : {cplx(0.0), cplx(0.5, 0.0), cplx(1.0, 0.3)}) {
      const KstSolution s = kst.solve(z);
      const double lam = lambda(e, z).value;
      rep.close("operator", "berezin A^2 z=" + std::to_string(z.real()) + "," +
                                std::to_string(z.imag()),
                1.0 - berezin_A2(a, s.s), lam * lam, 1e-5);
      rep.close("operator", "berezin A z=" + std::to_string(z.real()) + "," +
                                std::to_string(z.imag()),
                std::abs(berezin_A(a, s.s)), 0.0, 1e-10);
    }
  }
  {
    const double r = 1.1;
    const BoundaryOperatorMatrix c = discretize_cauchy(Curve::ellipse(r), Side::Interior, 256);
    const std::vector<double> lam = spectrum_A(kerzman_stein(c), 2);
    rep.close("operator", "bolt ratio r=1.1", lam[0] * 2.0 * (r + 1.0) / (r - 1.0), 1.0, 0.1);
    rep.close("operator", "lambda_1 pairing r=1.1", lam[0] - lam[1], 0.0, 1e-8);
  }
  if (level != VerifyLevel::Full) return;

  const Curve e = Curve::ellipse(2.0);
  double prev_norm = 0.0, prev_l1 = 0.0, prev_s = 0.0;
  for (int n : {512, 1024}) {
    const BoundaryOperatorMatrix ci = discretize_cauchy(e, Side::Interior, n);
    const BoundaryOperatorMatrix ai = kerzman_stein(ci);
    const double norm = operator_norm(ci);
    const double l1 = spectrum_A(ai, 1)[0];
    const double s = szego_via_kst(ci, ai, 0.0).diag;
    const std::string tag = " n=" + std::to_string(n);
    if (n == 512) {
      const double norm_ext = operator_norm(discretize_cauchy(e, Side::Exterior, n));
      rep.close("operator", "|C+| = |C-|" + tag, norm, norm_ext, 1e-6);
      rep.at_most("operator", "lambda(0) <= |C|" + tag, lambda_ellipse_0(2.0), norm, 1e-6);
      rep.at_most("operator", "|C| <= FKS" + tag, norm, fks_upper_bound(2.0), 1e-6);
      rep.close("operator", "lambda_1 = sqrt(|C|^2-1)" + tag, l1, std::sqrt(norm * norm - 1.0),
                1e-6);
    } else {
      rep.close("operator", "norm refinement 512->1024", norm, prev_norm, 1e-6);
      rep.close("operator", "lambda_1 refinement 512->1024", l1, prev_l1, 1e-6);
      rep.close("operator", "S(0,0) refinement 512->1024", s, prev_s, 1e-6);
    }
    prev_norm = norm;
    prev_l1 = l1;
    prev_s = s;
  }
}

}  // namespace

std::vector<CheckResult> run_verification(VerifyLevel level) {
  Report rep;
  specfun_checks(rep);
  circle_checks(rep);
  wedge_checks(rep);
  ellipse_checks(rep);
  operator_checks(rep, level);
  return rep.take();
}

}  // namespace cszego
