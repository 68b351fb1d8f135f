#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cfinsler/error.hpp"

namespace cfinsler {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using ComplexVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Dense complex square matrix. Named for its main use (Levi matrices); the
/// Hermitian property is checked by the producers, not enforced by the type.
template <typename Real>
using HermitianMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using cvec = ComplexVec<double>;
using cmat = ComplexMat<double>;
using cplx = std::complex<double>;

/// Finite-difference and linear-algebra tolerances shared by the numerics.
template <typename Real>
struct FDConfig {
  Real step = Real(1e-3);      // relative to max(1, |point|_inf)
  int richardson_levels = 2;   // 1 = plain 4th-order central differences
  Real tol_herm = Real(1e-8);  // absolute, on unit-scaled matrices
  Real tol_pd = Real(1e-12);   // relative pivot threshold

  void validate() const {
    if (!(step > Real(0) && step < Real(1)))
      throw Error(ErrorCode::ConfigError, "fd step must lie in (0, 1)");
    if (richardson_levels < 1 || richardson_levels > 4)
      throw Error(ErrorCode::ConfigError, "richardson_levels must lie in [1, 4]");
    if (!(tol_herm > Real(0)) || !(tol_pd > Real(0)))
      throw Error(ErrorCode::ConfigError, "tolerances must be positive");
  }
};

using FDConfigd = FDConfig<double>;

}  // namespace cfinsler
