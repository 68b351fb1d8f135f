#pragma once

#include <string>
#include <vector>

namespace cfinsler {

/// A one-variable function f(t), t >= 0, drawn from a small closed-form
/// catalog. Derivatives of any order up to kMaxDerivative are analytic.
class ScalarFunction1D {
 public:
  enum class Kind { Constant, Linear, Power, Exponential, Rational, Sum };
  static constexpr int kMaxDerivative = 5;

  static ScalarFunction1D constant(double c);
  static ScalarFunction1D linear(double c);                 // c t
  static ScalarFunction1D power(double c, double p);        // c t^p
  static ScalarFunction1D exponential(double c, double a);  // c e^{a t}
  static ScalarFunction1D rational(double a, double b);     // t / (a + b t^2)
  static ScalarFunction1D sum(std::vector<ScalarFunction1D> terms);

  Kind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<ScalarFunction1D>& terms() const { return terms_; }

  /// f(t), f'(t), ..., f^(count-1)(t). count <= kMaxDerivative + 1.
  std::vector<double> derivatives(double t, int count) const;

  double operator()(double t) const { return derivatives(t, 1)[0]; }
  double d1(double t) const { return derivatives(t, 2)[1]; }
  double d2(double t) const { return derivatives(t, 3)[2]; }
  double d3(double t) const { return derivatives(t, 4)[3]; }

  /// True when t lies in the function's open domain of definition and all
  /// derivatives up to kMaxDerivative are finite there. Does not check f > 0.
  bool defined_at(double t) const;

  /// Whether the function vanishes identically (e.g. constant 0, 0 * t).
  bool identically_zero() const;

  /// Short human-readable form such as "t/(1+1t^2)"; used in report verdicts.
  std::string describe() const;

  friend ScalarFunction1D operator+(ScalarFunction1D a, ScalarFunction1D b);

 private:
  ScalarFunction1D(Kind kind, std::vector<double> params, std::vector<ScalarFunction1D> terms = {});

  Kind kind_;
  std::vector<double> params_;
  std::vector<ScalarFunction1D> terms_;
};

}  // namespace cfinsler
