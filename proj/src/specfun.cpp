// SPDX-License-Identifier: Apache-2.0

#include "cszego/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cszego/error.hpp"

namespace cszego::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAgmCap = 64;
constexpr int kCarlsonCap = 100;
constexpr int kThetaCap = 200;
constexpr double kThetaTol = 1e-16;

std::string fmt(const char* name, double v) {
  std::ostringstream os;
  os.precision(17);
  os << name << " = " << v;
  return os.str();
}

void require_modulus(double k, const char* fn) {
  if (!(k >= 0.0 && k < 1.0)) {
    fail(ErrorKind::Domain, std::string(fn) + ": modulus must lie in [0,1), " + fmt("k", k));
  }
}

void require_nome(double q, const char* fn) {
  if (!(q >= 0.0 && q < 1.0)) {
    fail(ErrorKind::Domain, std::string(fn) + ": nome must lie in [0,1), " + fmt("q", q));
  }
}

// sqrt(1 - k^2) without cancellation near k = 1.
double complementary(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

double agm(double a, double b) {
  for (int i = 0; i < kAgmCap && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

}  // namespace

double ellint_K(double k) {
  require_modulus(k, "ellint_K");
  return kPi / (2.0 * agm(1.0, complementary(k)));
}

double ellint_E(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    fail(ErrorKind::Domain, "ellint_E: modulus must lie in [0,1], " + fmt("k", k));
  }
  if (k == 1.0) return 1.0;
  // E/K = 1 - sum_j 2^(j-1) c_j^2 along the AGM sequence, with c_0 = k.
  double a = 1.0;
  double b = complementary(k);
  double c = k;
  double weight = 0.5;
  double sum = weight * c * c;
  for (int i = 0; i < kAgmCap && std::abs(c) > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    weight *= 2.0;
    sum += weight * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

double carlson_RC(double x, double y) {
  if (!(x >= 0.0 && y > 0.0)) {
    fail(ErrorKind::Domain, "carlson_RC: need x >= 0 and y > 0");
  }
  if (x == 0.0) return kPi / (2.0 * std::sqrt(y));
  // R_C(x, y) = R_C(1, 1 + e) / sqrt(x) with e = y/x - 1.
  const double e = y / x - 1.0;
  double core;
  if (std::abs(e) < 1e-4) {
    core = 1.0 - e / 3.0 + e * e / 5.0 - e * e * e / 7.0;
  } else if (e > 0.0) {
    const double s = std::sqrt(e);
    core = std::atan(s) / s;
  } else {
    const double s = std::sqrt(-e);
    core = std::atanh(s) / s;
  }
  return core / std::sqrt(x);
}

double carlson_RF(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0 || (x == 0.0 && y == 0.0) || (y == 0.0 && z == 0.0) ||
      (x == 0.0 && z == 0.0)) {
    fail(ErrorKind::Domain, "carlson_RF: arguments must be nonnegative with at most one zero");
  }
  const double x0 = x, y0 = y;
  const double a0 = (x + y + z) / 3.0;
  const double q = std::pow(3e-16, -1.0 / 6.0) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double a = a0;
  double scale = 1.0;  // 4^-m
  for (int m = 0; m < kCarlsonCap && scale * q >= std::abs(a); ++m) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
  }
  const double X = scale * (a0 - x0) / a;  // (A0 - x_0) / (4^m A_m)
  const double Y = scale * (a0 - y0) / a;
  const double Z = -X - Y;
  const double e2 = X * Y - Z * Z;
  const double e3 = X * Y * Z;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

double carlson_RD(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z <= 0.0 || (x == 0.0 && y == 0.0)) {
    fail(ErrorKind::Domain, "carlson_RD: need x, y >= 0 (not both zero) and z > 0");
  }
  const double x0 = x, y0 = y;
  const double a0 = (x + y + 3.0 * z) / 5.0;
  const double q = std::pow(0.25e-16, -1.0 / 6.0) *
                   std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double a = a0;
  double scale = 1.0;
  double sum = 0.0;
  for (int m = 0; m < kCarlsonCap && scale * q >= std::abs(a); ++m) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * sy + sy * sz + sz * sx;
    sum += scale / (sz * (z + lambda));
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
  }
  const double X = scale * (a0 - x0) / a;
  const double Y = scale * (a0 - y0) / a;
  const double Z = -(X + Y) / 3.0;
  const double e2 = X * Y - 6.0 * Z * Z;
  const double e3 = (3.0 * X * Y - 8.0 * Z * Z) * Z;
  const double e4 = 3.0 * (X * Y - Z * Z) * Z * Z;
  const double e5 = X * Y * Z * Z * Z;
  const double poly = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                      9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return scale * poly / (a * std::sqrt(a)) + 3.0 * sum;
}

double carlson_RJ(double x, double y, double z, double p) {
  if (x < 0.0 || y < 0.0 || z < 0.0 || p <= 0.0 ||
      (x == 0.0 && y == 0.0) || (y == 0.0 && z == 0.0) || (x == 0.0 && z == 0.0)) {
    fail(ErrorKind::Domain, "carlson_RJ: need nonnegative x, y, z (at most one zero) and p > 0");
  }
  const double x0 = x, y0 = y, z0 = z;
  const double a0 = (x + y + z + 2.0 * p) / 5.0;
  const double delta = (p - x) * (p - y) * (p - z);
  const double q =
      std::pow(0.25e-16, -1.0 / 6.0) *
      std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z), std::abs(a0 - p)});
  double a = a0;
  double scale = 1.0;   // 4^-m
  double scale3 = 1.0;  // 4^-3m
  double sum = 0.0;
  for (int m = 0; m < kCarlsonCap && scale * q >= std::abs(a); ++m) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
    const double lambda = sx * sy + sy * sz + sz * sx;
    const double d = (sp + sx) * (sp + sy) * (sp + sz);
    const double e = scale3 * delta / (d * d);
    sum += scale * carlson_RC(1.0, 1.0 + e) / d;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    p = 0.25 * (p + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
    scale3 *= 1.0 / 64.0;
  }
  const double X = scale * (a0 - x0) / a;
  const double Y = scale * (a0 - y0) / a;
  const double Z = scale * (a0 - z0) / a;
  const double P = -(X + Y + Z) / 2.0;
  const double e2 = X * Y + X * Z + Y * Z - 3.0 * P * P;
  const double e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P * P * P;
  const double e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P * P * P) * P;
  const double e5 = X * Y * Z * P * P;
  const double poly = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                      9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return scale * poly / (a * std::sqrt(a)) + 6.0 * sum;
}

double ellint_Pi(double n, double k) {
  require_modulus(k, "ellint_Pi");
  if (!(n < 1.0)) {
    fail(ErrorKind::Domain, "ellint_Pi: characteristic must be < 1, " + fmt("n", n));
  }
  const double kc2 = (1.0 - k) * (1.0 + k);
  if (n == 0.0) return ellint_K(k);
  return carlson_RF(0.0, kc2, 1.0) + n / 3.0 * carlson_RJ(0.0, kc2, 1.0, 1.0 - n);
}

double nome(double k) {
  require_modulus(k, "nome");
  if (k == 0.0) return 0.0;
  if (k < 1e-6) {
    // q = m/16 + 8 (m/16)^2 + O(m^3), m = k^2; K(k') is not resolvable here.
    const double h = k * k / 16.0;
    return h + 8.0 * h * h;
  }
  return std::exp(-kPi * ellint_K(complementary(k)) / ellint_K(k));
}

double inverse_nome(double q) {
  require_nome(q, "inverse_nome");
  if (q == 0.0) return 0.0;
  const double t2 = theta(Theta::Two, 0.0, q).real();
  const double t3 = theta(Theta::Three, 0.0, q).real();
  return (t2 * t2) / (t3 * t3);
}

cplx theta(Theta j, cplx z, double q, int derivative) {
  require_nome(q, "theta");
  if (derivative < 0 || derivative > 2) {
    fail(ErrorKind::Domain, "theta: derivative order must be 0, 1 or 2");
  }
  const double y = std::abs(z.imag());
  const double q2 = q * q;

  if (j == Theta::One || j == Theta::Two) {
    if (q == 0.0) return 0.0;
    // 2 q^(1/4) sum_j (+-1)^j q^(j(j+1)) trig((2j+1) z)
    cplx sum = 0.0;
    double envelope_sum = 0.0;
    double qpow = 1.0;   // q^(j(j+1))
    double qstep = q2;   // q^(2(j+1))
    for (int n = 0; n < kThetaCap; ++n) {
      const double m = 2.0 * n + 1.0;
      const cplx arg = m * z;
      cplx term;
      if (j == Theta::One) {
        switch (derivative) {
          case 0: term = std::sin(arg); break;
          case 1: term = m * std::cos(arg); break;
          default: term = -m * m * std::sin(arg); break;
        }
        if (n % 2 == 1) term = -term;
      } else {
        switch (derivative) {
          case 0: term = std::cos(arg); break;
          case 1: term = -m * std::sin(arg); break;
          default: term = -m * m * std::cos(arg); break;
        }
      }
      sum += qpow * term;
      const double envelope = qpow * std::pow(m, derivative) * std::cosh(m * y);
      envelope_sum += envelope;
      if (n > 0 && envelope <= kThetaTol * envelope_sum) break;
      qpow *= qstep;
      qstep *= q2;
      if (qpow == 0.0) break;
    }
    return 2.0 * std::pow(q, 0.25) * sum;
  }

  // theta_3, theta_4: 1 + 2 sum_{j>=1} (+-1)^j q^(j^2) cos(2 j z)
  cplx sum = derivative == 0 ? 1.0 : 0.0;
  if (q == 0.0) return sum;
  double envelope_sum = derivative == 0 ? 1.0 : 0.0;
  double qpow = q;      // q^(n^2)
  double qstep = q * q2;  // q^(2n+1)
  for (int n = 1; n < kThetaCap; ++n) {
    const double m = 2.0 * n;
    const cplx arg = m * z;
    cplx term;
    switch (derivative) {
      case 0: term = std::cos(arg); break;
      case 1: term = -m * std::sin(arg); break;
      default: term = -m * m * std::cos(arg); break;
    }
    if (j == Theta::Four && n % 2 == 1) term = -term;
    sum += 2.0 * qpow * term;
    const double envelope = 2.0 * qpow * std::pow(m, derivative) * std::cosh(m * y);
    envelope_sum += envelope;
    if (n > 1 && envelope <= kThetaTol * envelope_sum) break;
    qpow *= qstep;
    qstep *= q2;
    if (qpow == 0.0) break;
  }
  return sum;
}

double theta1_prime_at0(double q) { return theta(Theta::One, 0.0, q, 1).real(); }

cplx jacobi_sn(cplx u, double k) {
  require_modulus(k, "jacobi_sn");
  if (k == 0.0) return std::sin(u);
  const double q = nome(k);
  const double t2 = theta(Theta::Two, 0.0, q).real();
  const double t3 = theta(Theta::Three, 0.0, q).real();
  const cplx v = u / (t3 * t3);
  const cplx num = theta(Theta::One, v, q);
  const cplx den = theta(Theta::Four, v, q);
  if (std::abs(den) <= 1e-13 * std::max(1.0, std::abs(num))) {
    std::ostringstream os;
    os.precision(17);
    os << "jacobi_sn: pole at u = " << u.real() << (u.imag() < 0 ? "" : "+") << u.imag() << "i";
    fail(ErrorKind::Pole, os.str());
  }
  return (t3 / t2) * num / den;
}

}  // namespace cszego::specfun
