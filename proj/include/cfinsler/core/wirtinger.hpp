#pragma once

// Wirtinger-calculus finite differences on C^m.
//
// A complex coordinate w^a = x^a + i y^a is differentiated through its two
// real axes: d/dw = (d/dx - i d/dy) / 2 and d/dwbar = (d/dx + i d/dy) / 2.
// Every real-axis derivative uses a 4th-order central stencil and is then
// Richardson-extrapolated over halved steps (error terms h^4, h^6, h^8).

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>
#include <utility>
#include <vector>

#include "cfinsler/core/types.hpp"

namespace cfinsler {

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename Real, typename V>
auto promote(const V& value) {
  if constexpr (std::is_arithmetic_v<V>)
    return std::complex<Real>(value, Real(0));
  else if constexpr (is_complex<V>::value)
    return value;
  else
    return value.template cast<std::complex<Real>>().eval();
}

template <typename V>
bool all_finite(const V& value) {
  if constexpr (std::is_arithmetic_v<V>)
    return std::isfinite(value);
  else if constexpr (is_complex<V>::value)
    return std::isfinite(value.real()) && std::isfinite(value.imag());
  else
    return value.allFinite();
}

template <typename X>
auto ev(X&& x) {
  if constexpr (requires { x.eval(); })
    return x.eval();
  else
    return std::decay_t<X>(x);
}

// Neville table over steps h, h/2, h/4, ... for a central scheme whose error
// expansion starts at h^4 and proceeds in even powers.
template <typename Real, typename D, typename Estimate>
D richardson(Estimate&& estimate, Real h, int levels) {
  std::vector<D> prev, cur;
  for (int k = 0; k < levels; ++k) {
    cur.clear();
    cur.push_back(estimate(h / Real(1 << k)));
    for (int j = 1; j <= k; ++j) {
      const Real factor = std::pow(Real(2), Real(2 * j + 2));
      cur.push_back(ev((factor * cur[j - 1] - prev[j - 1]) / (factor - Real(1))));
    }
    std::swap(prev, cur);
  }
  return prev.back();
}

template <typename Real>
Real stencil_step(const ComplexVec<Real>& point, Real step) {
  Real scale = Real(1);
  for (Eigen::Index i = 0; i < point.size(); ++i) scale = std::max(scale, std::abs(point[i]));
  return step * scale;
}

// Displacement of real axis `axis` (0..2m-1) by `delta`.
template <typename Real>
ComplexVec<Real> displaced(ComplexVec<Real> p, Eigen::Index axis, Real delta) {
  const Eigen::Index m = p.size();
  if (axis < m)
    p[axis] += std::complex<Real>(delta, 0);
  else
    p[axis - m] += std::complex<Real>(0, delta);
  return p;
}

struct AlwaysValid {
  template <typename P>
  bool operator()(const P&) const { return true; }
};

template <typename Real, typename Field, typename Valid>
auto checked_eval(Field& field, Valid& valid, const ComplexVec<Real>& p) {
  if (!valid(p)) throw Error(ErrorCode::StencilOutsideDomain, "stencil point rejected by validity predicate");
  auto value = promote<Real>(field(p));
  if (!all_finite(value)) throw Error(ErrorCode::NonFiniteEvaluation, "non-finite field value on stencil");
  return value;
}

}  // namespace detail

/// Derivative along one real axis of `point`, 4th-order central + Richardson.
template <typename Real, typename Field, typename Valid = detail::AlwaysValid>
auto real_axis_derivative(Field&& field, const ComplexVec<Real>& point, Eigen::Index axis,
                          const FDConfig<Real>& cfg, Valid&& valid = {}) {
  const Real h = detail::stencil_step(point, cfg.step);
  auto estimate = [&](Real hk) {
    auto at = [&](Real d) {
      return detail::checked_eval<Real>(field, valid, detail::displaced(point, axis, d));
    };
    return detail::ev(((at(-2 * hk) - at(2 * hk)) + Real(8) * (at(hk) - at(-hk))) /
                      (Real(12) * hk));
  };
  using D = decltype(estimate(h));
  return detail::richardson<Real, D>(estimate, h, cfg.richardson_levels);
}

/// Mixed second derivative along real axes a and b.
template <typename Real, typename Field, typename Valid = detail::AlwaysValid>
auto real_axis_second_derivative(Field&& field, const ComplexVec<Real>& point, Eigen::Index a,
                                 Eigen::Index b, const FDConfig<Real>& cfg, Valid&& valid = {}) {
  const Real h = detail::stencil_step(point, cfg.step);
  auto estimate = [&](Real hk) {
    auto at = [&](Real da, Real db) {
      auto p = detail::displaced(point, a, da);
      p = detail::displaced(p, b, db);
      return detail::checked_eval<Real>(field, valid, p);
    };
    if (a == b) {
      return detail::ev(((Real(16) * (at(hk, 0) + at(-hk, 0)) - (at(2 * hk, 0) + at(-2 * hk, 0))) -
                         Real(30) * at(0, 0)) /
                        (Real(12) * hk * hk));
    }
    static constexpr std::array<int, 4> offs{-2, -1, 1, 2};
    static constexpr std::array<double, 4> wts{1.0, -8.0, 8.0, -1.0};
    auto acc = detail::ev(Real(0) * at(0, 0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc = detail::ev(acc + Real(wts[i] * wts[j]) * at(offs[i] * hk, offs[j] * hk));
    return detail::ev(acc / (Real(144) * hk * hk));
  };
  using D = decltype(estimate(h));
  return detail::richardson<Real, D>(estimate, h, cfg.richardson_levels);
}

/// Holomorphic and antiholomorphic partials of a field of any value type
/// (real, complex, or a complex Eigen array); one entry per coordinate.
template <typename Real, typename Field, typename Valid = detail::AlwaysValid>
auto wirtinger_partials(Field&& field, const ComplexVec<Real>& point, const FDConfig<Real>& cfg,
                        Valid&& valid = {}) {
  const Eigen::Index m = point.size();
  using V = decltype(real_axis_derivative(field, point, 0, cfg, valid));
  std::pair<std::vector<V>, std::vector<V>> out;
  const std::complex<Real> I(0, 1);
  for (Eigen::Index a = 0; a < m; ++a) {
    const V dx = real_axis_derivative(field, point, a, cfg, valid);
    const V dy = real_axis_derivative(field, point, a + m, cfg, valid);
    if constexpr (detail::is_complex<V>::value) {
      out.first.push_back(Real(0.5) * (dx - I * dy));
      out.second.push_back(Real(0.5) * (dx + I * dy));
    } else {
      out.first.push_back((Real(0.5) * (dx - I * dy)).eval());
      out.second.push_back((Real(0.5) * (dx + I * dy)).eval());
    }
  }
  return out;
}

template <typename Real>
struct WirtingerGradient {
  ComplexVec<Real> holo;  // d/dw^a
  ComplexVec<Real> anti;  // d/dwbar^a
};

/// Wirtinger gradient of a scalar field (real- or complex-valued).
template <typename Real, typename Field, typename Valid = detail::AlwaysValid>
WirtingerGradient<Real> wirtinger_gradient(Field&& field, const ComplexVec<Real>& point,
                                           const FDConfig<Real>& cfg, Valid&& valid = {}) {
  cfg.validate();
  auto [holo, anti] = wirtinger_partials(field, point, cfg, valid);
  WirtingerGradient<Real> g{ComplexVec<Real>(point.size()), ComplexVec<Real>(point.size())};
  for (Eigen::Index a = 0; a < point.size(); ++a) {
    g.holo[a] = holo[a];
    g.anti[a] = anti[a];
  }
  return g;
}

/// entry(a, b) = d^2 field / dw^a dwbar^b.
///
/// When the field is real-valued (returns an arithmetic type) the result must
/// be Hermitian within tol_herm (relative to max(1, max|entry|)), otherwise
/// HermitianViolation is thrown.
template <typename Real, typename Field, typename Valid = detail::AlwaysValid>
HermitianMatrix<Real> wirtinger_mixed_hessian(Field&& field, const ComplexVec<Real>& point,
                                              const FDConfig<Real>& cfg, Valid&& valid = {}) {
  cfg.validate();
  const Eigen::Index m = point.size();
  const Eigen::Index axes = 2 * m;
  // Both triangles are evaluated so that an inconsistent field shows up as asymmetry.
  ComplexMat<Real> d2(axes, axes);
  for (Eigen::Index a = 0; a < axes; ++a)
    for (Eigen::Index b = 0; b < axes; ++b) d2(a, b) = real_axis_second_derivative(field, point, a, b, cfg, valid);
  const std::complex<Real> I(0, 1);
  HermitianMatrix<Real> h(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      h(a, b) = Real(0.25) * (d2(a, b) + d2(a + m, b + m) + I * (d2(a, b + m) - d2(a + m, b)));

  using Value = std::decay_t<decltype(field(point))>;
  if constexpr (std::is_arithmetic_v<Value>) {
    const Real scale = std::max(Real(1), h.cwiseAbs().maxCoeff());
    const Real asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (asym > cfg.tol_herm * scale)
      throw Error(ErrorCode::HermitianViolation, "mixed Hessian of a real field is not Hermitian");
    h = (Real(0.5) * (h + h.adjoint())).eval();
  }
  return h;
}

}  // namespace cfinsler
