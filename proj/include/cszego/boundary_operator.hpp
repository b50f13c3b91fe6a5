// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "cszego/geometry.hpp"
#include "cszego/kernels.hpp"

namespace cszego {

/// Dense discretization of a boundary operator on the nodes of a curve.
///
/// In the symmetrized frame a node vector f stands for sqrt(w_j) f(zeta_j),
/// so the discrete L^2(gamma) adjoint is the conjugate transpose.
struct BoundaryOperatorMatrix {
  Eigen::MatrixXcd entries;
  Eigen::VectorXd weights;      // arc-length weights |z'(t_j)| dt
  std::vector<cplx> points;
  std::vector<cplx> tangents;   // unit tangents
  Side side = Side::Interior;
  bool symmetrized = true;

  Eigen::Index size() const { return entries.rows(); }
};

inline constexpr int kMaxOperatorNodes = 2048;

/// Boundary Cauchy transform C = I/2 +- PV on n nodes.
BoundaryOperatorMatrix discretize_cauchy(const Curve& c, Side side, int n,
                                         bool symmetrized = true);

/// A = C - C^H.
BoundaryOperatorMatrix kerzman_stein(const BoundaryOperatorMatrix& cmat);

/// Largest singular value of a symmetrized operator, restricted to node
/// data with frequencies below n/4.
double operator_norm(const BoundaryOperatorMatrix& m);

/// Szego kernel at z from the Kerzman-Stein equation (I - A) S_z = C_z.
struct KstSolution {
  Eigen::VectorXcd s;       // normalized S_z in the symmetrized frame
  double diag;              // S(z, z) = ||S_z||^2
  double cauchy_norm_sq;    // ||C_z||^2 on the same nodes
  double accuracy;          // |<S_z, S_z> - <S_z, C_z>|
};

KstSolution szego_via_kst(const BoundaryOperatorMatrix& cmat, const BoundaryOperatorMatrix& amat,
                          cplx z);

/// Reuses one factorization of I - A for many evaluation points.
class KstSolver {
 public:
  KstSolver(const BoundaryOperatorMatrix& cmat, const BoundaryOperatorMatrix& amat);

  KstSolution solve(cplx z) const;
  double rcond() const { return rcond_; }
  const BoundaryOperatorMatrix& cauchy() const { return cmat_; }

 private:
  BoundaryOperatorMatrix cmat_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double rcond_ = 0.0;
};

/// <A s, s>; vanishes identically for the Kerzman-Stein operator.
cplx berezin_A(const BoundaryOperatorMatrix& amat, const Eigen::VectorXcd& s);

/// <A^2 s, s> = -||A s||^2.
double berezin_A2(const BoundaryOperatorMatrix& amat, const Eigen::VectorXcd& s);

/// Largest `count` values lambda_l >= 0 with +-i lambda_l in the spectrum of
/// A compressed to the band used by operator_norm, sorted descending and
/// listed with multiplicity.
std::vector<double> spectrum_A(const BoundaryOperatorMatrix& amat, int count);

/// Header "KSTMAT n side\n", then row-major little-endian (re, im) doubles.
void write_matrix_dump(const BoundaryOperatorMatrix& m, std::ostream& out);

}  // namespace cszego
