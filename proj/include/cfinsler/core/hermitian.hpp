#pragma once

// Small dense Hermitian linear algebra (n <= 8 in practice).

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "cfinsler/core/types.hpp"

namespace cfinsler {

template <typename Real>
struct InverseDet {
  HermitianMatrix<Real> inverse;
  Real det;
};

/// Inverse and (real) determinant through a pivoted LDL^H factorization.
/// Throws SingularMatrix when a pivot falls below tol_pd relative to the
/// largest diagonal magnitude.
template <typename Real>
InverseDet<Real> hermitian_inverse_det(const HermitianMatrix<Real>& m, const FDConfig<Real>& cfg = {}) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw Error(ErrorCode::SingularMatrix, "matrix must be square and nonempty");
  if (!m.allFinite()) throw Error(ErrorCode::NonFiniteEvaluation, "matrix has non-finite entries");

  Eigen::LDLT<HermitianMatrix<Real>> ldlt(m);
  const auto d = ldlt.vectorD();
  const Real scale = std::max(m.diagonal().cwiseAbs().maxCoeff(), m.cwiseAbs().maxCoeff());
  const Real threshold = cfg.tol_pd * (scale > Real(0) ? scale : Real(1));
  Real det = Real(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real pivot = std::real(d[i]);
    if (std::abs(pivot) < threshold) throw Error(ErrorCode::SingularMatrix, "pivot below threshold");
    det *= pivot;
  }
  HermitianMatrix<Real> inv = ldlt.solve(HermitianMatrix<Real>::Identity(n, n));
  inv = (Real(0.5) * (inv + inv.adjoint())).eval();
  return {std::move(inv), det};
}

/// Unpivoted LDL^H; true iff every pivot exceeds tol_pd * trace / n.
template <typename Real>
bool positive_definite(const HermitianMatrix<Real>& m, const FDConfig<Real>& cfg = {}) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n || !m.allFinite()) return false;
  const Real mean_diag = m.diagonal().real().sum() / Real(n);
  if (!(mean_diag > Real(0))) return false;
  const Real threshold = cfg.tol_pd * mean_diag;

  HermitianMatrix<Real> l = HermitianMatrix<Real>::Zero(n, n);
  Eigen::Matrix<Real, Eigen::Dynamic, 1> d(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::complex<Real> pivot = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= l(j, k) * std::conj(l(j, k)) * d[k];
    d[j] = pivot.real();
    if (!(d[j] > threshold)) return false;
    l(j, j) = Real(1);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      std::complex<Real> acc = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k)) * d[k];
      l(i, j) = acc / d[j];
    }
  }
  return true;
}

}  // namespace cfinsler
