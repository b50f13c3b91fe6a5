// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

namespace cszego::specfun {

using cplx = std::complex<double>;

// Complete elliptic integrals in the Whittaker-Watson convention: the
// argument is the modulus k, not the parameter m = k^2, and the
// characteristic n enters as (1 - n t^2).

/// K(k) = int_0^1 dt / sqrt((1-t^2)(1-k^2 t^2)), for 0 <= k < 1.
double ellint_K(double k);

/// E(k) = int_0^1 sqrt((1-k^2 t^2)/(1-t^2)) dt, for 0 <= k <= 1.
double ellint_E(double k);

/// Pi(n,k) = int_0^1 dt / ((1-n t^2) sqrt((1-t^2)(1-k^2 t^2))), n < 1.
double ellint_Pi(double n, double k);

// Carlson symmetric integrals (real arguments).
double carlson_RF(double x, double y, double z);
double carlson_RD(double x, double y, double z);
double carlson_RJ(double x, double y, double z, double p);
double carlson_RC(double x, double y);

/// Nome q(k) = exp(-pi K(k') / K(k)).
double nome(double k);

/// Modulus recovered from the nome, theta_2(0,q)^2 / theta_3(0,q)^2.
double inverse_nome(double q);

enum class Theta { One = 1, Two = 2, Three = 3, Four = 4 };

/// Jacobi theta function theta_j(z, q), or its z-derivative of the given
/// order (0, 1 or 2), summed term by term from the q-series.
cplx theta(Theta j, cplx z, double q, int derivative = 0);

/// theta_1'(0, q); equals theta_2 theta_3 theta_4 at z = 0.
double theta1_prime_at0(double q);

/// Jacobi sn(u, k) written as a ratio of theta functions with nome q(k).
cplx jacobi_sn(cplx u, double k);

}  // namespace cszego::specfun
