#include "cfinsler/profiles/scalar_function.hpp"

#include <cmath>
#include <sstream>

#include "cfinsler/error.hpp"

namespace cfinsler {

namespace {

void require_finite(std::initializer_list<double> values) {
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidCatalogEntry, "catalog parameters must be finite");
}

}  // namespace

ScalarFunction1D::ScalarFunction1D(Kind kind, std::vector<double> params, std::vector<ScalarFunction1D> terms)
    : kind_(kind), params_(std::move(params)), terms_(std::move(terms)) {}

ScalarFunction1D ScalarFunction1D::constant(double c) {
  require_finite({c});
  return {Kind::Constant, {c}};
}

ScalarFunction1D ScalarFunction1D::linear(double c) {
  require_finite({c});
  return {Kind::Linear, {c}};
}

ScalarFunction1D ScalarFunction1D::power(double c, double p) {
  require_finite({c, p});
  return {Kind::Power, {c, p}};
}

ScalarFunction1D ScalarFunction1D::exponential(double c, double a) {
  require_finite({c, a});
  return {Kind::Exponential, {c, a}};
}

ScalarFunction1D ScalarFunction1D::rational(double a, double b) {
  require_finite({a, b});
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidCatalogEntry, "rational t/(a+bt^2) needs a > 0");
  return {Kind::Rational, {a, b}};
}

ScalarFunction1D ScalarFunction1D::sum(std::vector<ScalarFunction1D> terms) {
  if (terms.empty()) throw Error(ErrorCode::InvalidCatalogEntry, "sum needs at least one term");
  return {Kind::Sum, {}, std::move(terms)};
}

ScalarFunction1D operator+(ScalarFunction1D a, ScalarFunction1D b) {
  std::vector<ScalarFunction1D> terms;
  for (auto* f : {&a, &b}) {
    if (f->kind_ == ScalarFunction1D::Kind::Sum)
      terms.insert(terms.end(), f->terms_.begin(), f->terms_.end());
    else
      terms.push_back(*f);
  }
  return ScalarFunction1D::sum(std::move(terms));
}

std::vector<double> ScalarFunction1D::derivatives(double t, int count) const {
  if (count < 1 || count > kMaxDerivative + 1)
    throw Error(ErrorCode::InvalidCatalogEntry, "derivative count out of range");
  std::vector<double> d(count, 0.0);
  switch (kind_) {
    case Kind::Constant:
      d[0] = params_[0];
      break;
    case Kind::Linear:
      d[0] = params_[0] * t;
      if (count > 1) d[1] = params_[0];
      break;
    case Kind::Power: {
      const double c = params_[0], p = params_[1];
      double falling = 1.0;
      for (int k = 0; k < count; ++k) {
        if (k > 0) falling *= (p - (k - 1));
        d[k] = falling == 0.0 ? 0.0 : c * falling * std::pow(t, p - k);
      }
      break;
    }
    case Kind::Exponential: {
      const double c = params_[0], a = params_[1];
      const double e = std::exp(a * t);
      double ak = 1.0;
      for (int k = 0; k < count; ++k, ak *= a) d[k] = c * ak * e;
      break;
    }
    case Kind::Rational: {
      // Series quotient of (t + x) / (a + b (t + x)^2) in powers of x.
      const double a = params_[0], b = params_[1];
      const double d0 = a + b * t * t, d1 = 2.0 * b * t, d2 = b;
      std::vector<double> q(count, 0.0);
      double fact = 1.0;
      for (int k = 0; k < count; ++k) {
        const double num = k == 0 ? t : (k == 1 ? 1.0 : 0.0);
        double acc = num;
        if (k >= 1) acc -= d1 * q[k - 1];
        if (k >= 2) acc -= d2 * q[k - 2];
        q[k] = acc / d0;
        if (k > 0) fact *= k;
        d[k] = fact * q[k];
      }
      break;
    }
    case Kind::Sum:
      for (const auto& term : terms_) {
        const auto dt = term.derivatives(t, count);
        for (int k = 0; k < count; ++k) d[k] += dt[k];
      }
      break;
  }
  return d;
}

bool ScalarFunction1D::defined_at(double t) const {
  if (!std::isfinite(t) || t < 0.0) return false;
  switch (kind_) {
    case Kind::Constant:
    case Kind::Linear:
    case Kind::Exponential:
      break;
    case Kind::Power: {
      const double p = params_[1];
      const bool polynomial = p >= 0.0 && p == std::floor(p);
      if (!polynomial && t <= 0.0) return false;
      break;
    }
    case Kind::Rational:
      if (!(params_[0] + params_[1] * t * t > 0.0)) return false;
      break;
    case Kind::Sum:
      for (const auto& term : terms_)
        if (!term.defined_at(t)) return false;
      return true;
  }
  for (double v : derivatives(t, kMaxDerivative + 1))
    if (!std::isfinite(v)) return false;
  return true;
}

bool ScalarFunction1D::identically_zero() const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Linear:
    case Kind::Power:
    case Kind::Exponential:
      return params_[0] == 0.0;
    case Kind::Rational:
      return false;
    case Kind::Sum:
      for (const auto& term : terms_)
        if (!term.identically_zero()) return false;
      return true;
  }
  return false;
}

std::string ScalarFunction1D::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant: os << params_[0]; break;
    case Kind::Linear: os << params_[0] << "t"; break;
    case Kind::Power: os << params_[0] << "t^" << params_[1]; break;
    case Kind::Exponential: os << params_[0] << "e^(" << params_[1] << "t)"; break;
    case Kind::Rational: os << "t/(" << params_[0] << "+" << params_[1] << "t^2)"; break;
    case Kind::Sum:
      for (std::size_t i = 0; i < terms_.size(); ++i) os << (i ? " + " : "") << terms_[i].describe();
      break;
  }
  return os.str();
}

}  // namespace cfinsler
