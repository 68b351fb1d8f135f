#pragma once

// Metric profiles phi(t, s) of unitary-invariant metrics F = sqrt(r phi(t, s)),
// with r = |v|^2, t = |z|^2, s = |<z, v>|^2 / r.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "cfinsler/profiles/jet.hpp"
#include "cfinsler/profiles/scalar_function.hpp"

namespace cfinsler {

/// phi and all of its partial derivatives up to total order 3.
struct PhiJet {
  double phi = 0, phi_t = 0, phi_s = 0;
  double phi_tt = 0, phi_ts = 0, phi_ss = 0;
  double phi_ttt = 0, phi_tts = 0, phi_tss = 0, phi_sss = 0;

  /// d^{i+j} phi / dt^i ds^j for i + j <= 3.
  double partial(int i, int j) const;
  Jetd to_jet() const;
  static PhiJet from_jet(const Jetd& j);
};

enum class ProfileFamily { Hermitian, Randers, WkRanders, Model };

/// Serializable description of how a profile was built.
struct ProfileDescriptor {
  ProfileFamily family = ProfileFamily::Hermitian;
  std::optional<ScalarFunction1D> f, g, h;
  int k = 0;          // model curvature tag (+4, 0, -4)
  double c = 1.0;     // model parameter
  double h_scale = 1.0;  // wk-randers only; != 1 perturbs off the weakly Kahler family

  std::string describe() const;
};

/// Non-smooth directions <z, v> = 0 of Randers-type metrics are avoided by
/// requiring s >= kRandersMinSFraction * t.
inline constexpr double kRandersMinSFraction = 1e-6;

/// Immutable profile: a jet evaluator, a validity predicate and a descriptor.
class MetricProfile {
 public:
  using JetFn = std::function<Jetd(double t, double s, int order)>;
  using Predicate = std::function<bool(double t, double s)>;

  MetricProfile(ProfileDescriptor descriptor, JetFn jet, Predicate defined, Predicate valid);

  const ProfileDescriptor& descriptor() const { return *descriptor_; }

  /// The jet evaluator can be called at (t, s).
  bool defined(double t, double s) const;
  /// Full validity region (open): the metric is a smooth, admissible profile here.
  bool valid(double t, double s) const;

  /// Order-3 jet; DomainViolation outside validity or when s > t.
  PhiJet phi_jet(double t, double s) const;
  Jetd jet(double t, double s, int order = Jetd::kMaxOrder) const;
  /// Same as jet() but only requires defined(t, s).
  Jetd jet_unchecked(double t, double s, int order = Jetd::kMaxOrder) const;
  /// phi(t, s) alone, requires defined(t, s).
  double value(double t, double s) const { return jet_unchecked(t, s, 0).value(); }

 private:
  std::shared_ptr<const ProfileDescriptor> descriptor_;
  JetFn jet_;
  Predicate defined_;
  Predicate valid_;
};

/// phi = f + f' s (Hermitian; Kahler). Valid where f > 0 and f + t f' > 0.
MetricProfile hermitian_profile(const ScalarFunction1D& f);

/// phi = (sqrt(f + g s) + sqrt(h s))^2. h must not vanish identically.
MetricProfile randers_profile(const ScalarFunction1D& f, const ScalarFunction1D& g,
                              const ScalarFunction1D& h);

/// Weakly Kahler Randers family: g = (t f' - f) / 2t, h = h_scale (t f' + f) / 2t.
MetricProfile wk_randers_profile(const ScalarFunction1D& f, double h_scale = 1.0);

/// Constant holomorphic curvature models: k = +4 (f = t/(c^2+t^2), t > 0),
/// k = 0 (f = c t), k = -4 (f = t/(c^2-t^2), 0 < t < c).
MetricProfile model_profile(int k, double c);

/// Rebuild a profile from its descriptor.
MetricProfile make_profile(const ProfileDescriptor& d);

}  // namespace cfinsler
