#pragma once

// Truncated bivariate Taylor polynomials in (t, s), total order <= 3.
//
// A Jet carries the Taylor coefficients of a smooth function around a base
// point (t0, s0). Arithmetic truncates to the smaller order of its operands,
// and dt()/ds() lower the order by one, so formulas written over jets
// produce their own partial derivatives by the chain rule.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

namespace cfinsler {

template <typename Real>
class Jet {
 public:
  static constexpr int kMaxOrder = 3;

  Jet() = default;

  static Jet constant(Real c, int order = kMaxOrder) {
    Jet j(order);
    j.at(0, 0) = c;
    return j;
  }
  static Jet variable_t(Real t0, int order = kMaxOrder) {
    Jet j = constant(t0, order);
    if (order >= 1) j.at(1, 0) = Real(1);
    return j;
  }
  static Jet variable_s(Real s0, int order = kMaxOrder) {
    Jet j = constant(s0, order);
    if (order >= 1) j.at(0, 1) = Real(1);
    return j;
  }
  /// Jet of a function of t alone from its derivatives f, f', f'', ... at t0.
  static Jet from_t_derivatives(std::span<const Real> d, int order = kMaxOrder) {
    Jet j(order);
    Real fact = Real(1);
    for (int i = 0; i <= order && i < static_cast<int>(d.size()); ++i) {
      if (i > 0) fact *= Real(i);
      j.at(i, 0) = d[i] / fact;
    }
    return j;
  }
  /// Jet from partial-derivative values, d(i, j) = d^{i+j} f / dt^i ds^j.
  template <typename DerivFn>
  static Jet from_partials(DerivFn&& d, int order = kMaxOrder) {
    Jet j(order);
    for (int i = 0; i <= order; ++i)
      for (int k = 0; i + k <= order; ++k) j.at(i, k) = d(i, k) / (factorial(i) * factorial(k));
    return j;
  }

  int order() const { return order_; }
  Real value() const { return at(0, 0); }
  Real coeff(int i, int j) const { return at(i, j); }
  /// d^{i+j} f / dt^i ds^j at the base point; zero beyond the carried order.
  Real partial(int i, int j) const {
    if (i + j > order_) return Real(0);
    return at(i, j) * factorial(i) * factorial(j);
  }

  Jet dt() const {
    Jet r(std::max(order_ - 1, 0));
    for (int i = 0; i <= r.order_; ++i)
      for (int k = 0; i + k <= r.order_; ++k) r.at(i, k) = Real(i + 1) * at(i + 1, k);
    return r;
  }
  Jet ds() const {
    Jet r(std::max(order_ - 1, 0));
    for (int i = 0; i <= r.order_; ++i)
      for (int k = 0; i + k <= r.order_; ++k) r.at(i, k) = Real(k + 1) * at(i, k + 1);
    return r;
  }

  Jet truncated(int order) const {
    Jet r(std::min(order, order_));
    for (int i = 0; i <= r.order_; ++i)
      for (int k = 0; i + k <= r.order_; ++k) r.at(i, k) = at(i, k);
    return r;
  }

  bool finite() const {
    for (Real c : c_)
      if (!std::isfinite(c)) return false;
    return true;
  }

  friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, Real(1)); }
  friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, Real(-1)); }
  friend Jet operator-(const Jet& a) { return Real(-1) * a; }
  friend Jet operator+(const Jet& a, Real c) {
    Jet r = a;
    r.at(0, 0) += c;
    return r;
  }
  friend Jet operator+(Real c, const Jet& a) { return a + c; }
  friend Jet operator-(const Jet& a, Real c) { return a + (-c); }
  friend Jet operator-(Real c, const Jet& a) { return (-a) + c; }
  friend Jet operator*(Real c, const Jet& a) {
    Jet r = a;
    for (Real& x : r.c_) x *= c;
    return r;
  }
  friend Jet operator*(const Jet& a, Real c) { return c * a; }
  friend Jet operator/(const Jet& a, Real c) { return (Real(1) / c) * a; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    for (int i = 0; i <= r.order_; ++i)
      for (int k = 0; i + k <= r.order_; ++k) {
        Real acc = Real(0);
        for (int p = 0; p <= i; ++p)
          for (int q = 0; q <= k; ++q) acc += a.at(p, q) * b.at(i - p, k - q);
        r.at(i, k) = acc;
      }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(Real c, const Jet& b) { return c * reciprocal(b); }

  /// u(x) given u and its first three derivatives at x.value().
  friend Jet compose(const std::array<Real, 4>& u, const Jet& x) {
    Jet delta = x;
    delta.at(0, 0) = Real(0);
    Jet result = constant(u[0], x.order_);
    Jet power = constant(Real(1), x.order_);
    for (int k = 1; k <= x.order_; ++k) {
      power = power * delta;
      result = result + (u[k] / factorial(k)) * power;
    }
    return result;
  }
  friend Jet reciprocal(const Jet& x) {
    const Real v = x.value();
    return compose({Real(1) / v, Real(-1) / (v * v), Real(2) / (v * v * v), Real(-6) / (v * v * v * v)}, x);
  }
  friend Jet sqrt(const Jet& x) {
    const Real v = x.value();
    const Real r = std::sqrt(v);
    return compose({r, Real(0.5) / r, Real(-0.25) / (r * v), Real(0.375) / (r * v * v)}, x);
  }

 private:
  explicit Jet(int order) : order_(order) {}

  static Real factorial(int k) {
    static constexpr std::array<double, 5> f{1, 1, 2, 6, 24};
    return Real(f[k]);
  }
  static Jet combine(const Jet& a, const Jet& b, Real sign) {
    Jet r(std::min(a.order_, b.order_));
    for (int i = 0; i <= r.order_; ++i)
      for (int k = 0; i + k <= r.order_; ++k) r.at(i, k) = a.at(i, k) + sign * b.at(i, k);
    return r;
  }

  Real& at(int i, int k) { return c_[i * (kMaxOrder + 1) + k]; }
  Real at(int i, int k) const { return c_[i * (kMaxOrder + 1) + k]; }

  int order_ = kMaxOrder;
  std::array<Real, (kMaxOrder + 1) * (kMaxOrder + 1)> c_{};
};

using Jetd = Jet<double>;

}  // namespace cfinsler
