// SPDX-License-Identifier: Apache-2.0

#include "cszego/boundary_operator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>

#include "cszego/error.hpp"

namespace cszego {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

void require_symmetrized(const BoundaryOperatorMatrix& m, const char* fn) {
  if (!m.symmetrized) {
    fail(ErrorKind::Frame, std::string(fn) + ": matrix is not in the symmetrized frame");
  }
}

int node_winding(const std::vector<cplx>& pts, cplx z) {
  double total = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    total += std::arg((pts[(j + 1) % pts.size()] - z) / (pts[j] - z));
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

void write_le_double(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(buf, 8);
}

// Orthonormal basis of the resolved band sqrt(w_j) e^{ik t_j}, -n/4 <= k < n/4.
// Near the Nyquist frequency the alternating-point rule aliases and produces
// spurious eigenmodes, so spectral quantities are taken on this subspace.
Eigen::MatrixXcd resolved_basis(const BoundaryOperatorMatrix& m) {
  const Eigen::Index n = m.size();
  const Eigen::Index half = n / 4;
  Eigen::MatrixXcd v(n, 2 * half);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    const double root = std::sqrt(m.weights(j));
    for (Eigen::Index k = -half; k < half; ++k) {
      v(j, k + half) = root * std::polar(1.0, static_cast<double>(k) * t);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, 2 * half);
}

}  // namespace

BoundaryOperatorMatrix discretize_cauchy(const Curve& c, Side side, int n, bool symmetrized) {
  if (!c.is_bounded()) fail(ErrorKind::UnboundedCurve, "the wedge boundary is not discretized");
  if (n % 2 != 0) fail(ErrorKind::Parity, "discretize_cauchy: n must be even");
  if (n < 32 || n > kMaxOperatorNodes) {
    fail(ErrorKind::UnsupportedParameter, "discretize_cauchy: n must lie in [32, " +
                                              std::to_string(kMaxOperatorNodes) + "]");
  }
  const SampledCurve s = sample_curve(c, n);
  const double dt = 2.0 * kPi / n;

  BoundaryOperatorMatrix m;
  m.side = side;
  m.symmetrized = symmetrized;
  m.points = s.z;
  m.tangents.resize(n);
  m.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    const double speed = std::abs(s.dz[j]);
    m.weights(j) = speed * dt;
    m.tangents[j] = s.dz[j] / speed;
  }

  // PV part K: the cot((t - s)/2)/2 singularity is integrated with the
  // trigonometric rule (weight 2 dt on odd offsets), the smooth remainder
  // with the trapezoid rule.
  const cplx pre = dt / (2.0 * kPi * kI);
  Eigen::MatrixXcd k(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) {
        k(a, a) = pre * s.d2z[a] / (2.0 * s.dz[a]);
        continue;
      }
      const double half = 0.5 * dt * (b - a);
      const double cot = 1.0 / std::tan(half);
      cplx v = pre * (s.dz[b] / (s.z[b] - s.z[a]) - 0.5 * cot);
      if ((b - a) % 2 != 0) v += 2.0 * pre * 0.5 * cot;
      k(a, b) = v;
    }
  }
  const double sign = side == Side::Interior ? 1.0 : -1.0;
  m.entries = sign * k;
  m.entries.diagonal().array() += 0.5;

  if (symmetrized) {
    const Eigen::ArrayXd root = m.weights.array().sqrt();
    m.entries = root.matrix().asDiagonal() * m.entries * root.inverse().matrix().asDiagonal();
  }
  return m;
}

BoundaryOperatorMatrix kerzman_stein(const BoundaryOperatorMatrix& cmat) {
  require_symmetrized(cmat, "kerzman_stein");
  BoundaryOperatorMatrix a = cmat;
  a.entries = cmat.entries - cmat.entries.adjoint();
  return a;
}

double operator_norm(const BoundaryOperatorMatrix& m) {
  require_symmetrized(m, "operator_norm");
  const Eigen::MatrixXcd mat = m.entries * resolved_basis(m);
  // The top singular values sit within (r-1)^2 of the cluster at 1 for
  // near-circular curves, far too tight a gap for power iteration.
  const Eigen::MatrixXcd gram = mat.adjoint() * mat;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("operator_norm: eigensolver did not converge",
                           std::sqrt(gram.diagonal().real().maxCoeff()));
  }
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

KstSolver::KstSolver(const BoundaryOperatorMatrix& cmat, const BoundaryOperatorMatrix& amat)
    : cmat_(cmat) {
  require_symmetrized(cmat, "szego_via_kst");
  require_symmetrized(amat, "szego_via_kst");
  if (cmat.size() != amat.size() || cmat.side != amat.side) {
    fail(ErrorKind::SideMismatch, "szego_via_kst: C and A come from different discretizations");
  }
  const Eigen::Index n = amat.size();
  lu_.compute(Eigen::MatrixXcd::Identity(n, n) - amat.entries);
  rcond_ = lu_.rcond();
  if (!(rcond_ > 1e-6)) {
    fail(ErrorKind::Conditioning, "szego_via_kst: I - A is ill-conditioned (rcond " +
                                      std::to_string(rcond_) + ")");
  }
}

KstSolution KstSolver::solve(cplx z) const {
  const int w = node_winding(cmat_.points, z);
  const bool inside = w == 1;
  if (inside != (cmat_.side == Side::Interior)) {
    fail(ErrorKind::SideMismatch, "szego_via_kst: z is not inside the discretized side");
  }
  const Eigen::Index n = cmat_.size();
  const double sign = cmat_.side == Side::Interior ? 1.0 : -1.0;
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = cmat_.points[j] - z;
    if (std::abs(d) == 0.0) fail(ErrorKind::Singular, "szego_via_kst: z coincides with a node");
    const cplx kernel = sign * cmat_.tangents[j] / (2.0 * kPi * kI * d);
    rhs(j) = std::sqrt(cmat_.weights(j)) * std::conj(kernel);
  }
  const Eigen::VectorXcd sz = lu_.solve(rhs);
  KstSolution out;
  out.diag = sz.squaredNorm();
  out.cauchy_norm_sq = rhs.squaredNorm();
  out.accuracy = std::abs(out.diag - rhs.dot(sz));
  out.s = sz / std::sqrt(out.diag);
  return out;
}

KstSolution szego_via_kst(const BoundaryOperatorMatrix& cmat, const BoundaryOperatorMatrix& amat,
                          cplx z) {
  return KstSolver(cmat, amat).solve(z);
}

cplx berezin_A(const BoundaryOperatorMatrix& amat, const Eigen::VectorXcd& s) {
  require_symmetrized(amat, "berezin_A");
  return s.dot(amat.entries * s);
}

double berezin_A2(const BoundaryOperatorMatrix& amat, const Eigen::VectorXcd& s) {
  require_symmetrized(amat, "berezin_A2");
  const Eigen::VectorXcd as = amat.entries * s;
  return s.dot(amat.entries * as).real();
}

std::vector<double> spectrum_A(const BoundaryOperatorMatrix& amat, int count) {
  require_symmetrized(amat, "spectrum_A");
  const Eigen::MatrixXcd q = resolved_basis(amat);
  const Eigen::MatrixXcd herm = -kI * (q.adjoint() * amat.entries * q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    fail(ErrorKind::NonConvergence, "spectrum_A: eigensolver did not converge");
  }
  // Eigenvalues come ascending and in +- pairs; keep the upper half.
  const Eigen::VectorXd ev = es.eigenvalues();
  const Eigen::Index n = ev.size();
  std::vector<double> out;
  for (Eigen::Index j = n - 1; j >= n / 2; --j) out.push_back(std::max(ev(j), 0.0));
  if (count >= 0 && static_cast<std::size_t>(count) < out.size()) out.resize(count);
  return out;
}

void write_matrix_dump(const BoundaryOperatorMatrix& m, std::ostream& out) {
  out << "KSTMAT " << m.size() << ' ' << (m.side == Side::Interior ? "interior" : "exterior")
      << '\n';
  for (Eigen::Index r = 0; r < m.size(); ++r) {
    for (Eigen::Index c = 0; c < m.size(); ++c) {
      write_le_double(out, m.entries(r, c).real());
      write_le_double(out, m.entries(r, c).imag());
    }
  }
  if (!out) fail(ErrorKind::Io, "write_matrix_dump: write failed");
}

}  // namespace cszego
