#include "cfinsler/profiles/profile.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "cfinsler/error.hpp"

namespace cfinsler {

namespace {

// Geometric range shared by all profiles: 0 <= s <= t.
bool in_cone(double t, double s) {
  return std::isfinite(t) && std::isfinite(s) && t >= 0.0 && s >= 0.0 && s <= t;
}

Jetd t_jet(const ScalarFunction1D& f, double t, int order, int shift = 0) {
  const auto d = f.derivatives(t, order + 1 + shift);
  return Jetd::from_t_derivatives(std::span<const double>(d).subspan(shift), order);
}

// Coefficients (f, g, h) of a Randers profile as t-jets.
using RandersCoefficients = std::function<std::array<Jetd, 3>(double t, int order)>;

Jetd randers_phi(const RandersCoefficients& coeffs, double t, double s, int order) {
  const auto [F, G, H] = coeffs(t, order);
  const Jetd S = Jetd::variable_s(s, order);
  const Jetd root = sqrt(F + G * S) + sqrt(H * S);
  return root * root;
}

bool randers_defined(const RandersCoefficients& coeffs, double t, double s) {
  if (!in_cone(t, s) || !(s > 0.0)) return false;
  const auto [F, G, H] = coeffs(t, 0);
  return F.value() + G.value() * s > 0.0 && H.value() > 0.0;
}

bool randers_valid(const RandersCoefficients& coeffs, double t, double s) {
  if (!randers_defined(coeffs, t, s) || s < kRandersMinSFraction * t) return false;
  const auto [F, G, H] = coeffs(t, 0);
  return F.value() > 0.0;
}

MetricProfile make_randers(ProfileDescriptor desc, RandersCoefficients coeffs,
                           std::function<bool(double)> t_ok) {
  auto jet = [coeffs](double t, double s, int order) { return randers_phi(coeffs, t, s, order); };
  auto defined = [coeffs, t_ok](double t, double s) { return t_ok(t) && randers_defined(coeffs, t, s); };
  auto valid = [coeffs, t_ok](double t, double s) { return t_ok(t) && randers_valid(coeffs, t, s); };
  return MetricProfile(std::move(desc), std::move(jet), std::move(defined), std::move(valid));
}

}  // namespace

double PhiJet::partial(int i, int j) const {
  switch (i * 4 + j) {
    case 0: return phi;
    case 4: return phi_t;
    case 1: return phi_s;
    case 8: return phi_tt;
    case 5: return phi_ts;
    case 2: return phi_ss;
    case 12: return phi_ttt;
    case 9: return phi_tts;
    case 6: return phi_tss;
    case 3: return phi_sss;
    default: return 0.0;
  }
}

Jetd PhiJet::to_jet() const {
  return Jetd::from_partials([this](int i, int j) { return partial(i, j); });
}

PhiJet PhiJet::from_jet(const Jetd& j) {
  PhiJet p;
  p.phi = j.partial(0, 0);
  p.phi_t = j.partial(1, 0);
  p.phi_s = j.partial(0, 1);
  p.phi_tt = j.partial(2, 0);
  p.phi_ts = j.partial(1, 1);
  p.phi_ss = j.partial(0, 2);
  p.phi_ttt = j.partial(3, 0);
  p.phi_tts = j.partial(2, 1);
  p.phi_tss = j.partial(1, 2);
  p.phi_sss = j.partial(0, 3);
  return p;
}

std::string ProfileDescriptor::describe() const {
  std::ostringstream os;
  switch (family) {
    case ProfileFamily::Hermitian: os << "hermitian(f=" << f->describe() << ")"; break;
    case ProfileFamily::Randers:
      os << "randers(f=" << f->describe() << ", g=" << g->describe() << ", h=" << h->describe() << ")";
      break;
    case ProfileFamily::WkRanders:
      os << "wk-randers(f=" << f->describe();
      if (h_scale != 1.0) os << ", h_scale=" << h_scale;
      os << ")";
      break;
    case ProfileFamily::Model: os << "model(k=" << k << ", c=" << c << ")"; break;
  }
  return os.str();
}

MetricProfile::MetricProfile(ProfileDescriptor descriptor, JetFn jet, Predicate defined, Predicate valid)
    : descriptor_(std::make_shared<const ProfileDescriptor>(std::move(descriptor))),
      jet_(std::move(jet)),
      defined_(std::move(defined)),
      valid_(std::move(valid)) {}

bool MetricProfile::defined(double t, double s) const { return in_cone(t, s) && defined_(t, s); }

bool MetricProfile::valid(double t, double s) const { return defined(t, s) && valid_(t, s); }

Jetd MetricProfile::jet_unchecked(double t, double s, int order) const {
  if (!defined(t, s)) throw Error(ErrorCode::DomainViolation, "profile not defined at the requested (t, s)");
  Jetd j = jet_(t, s, order);
  if (!j.finite()) throw Error(ErrorCode::NonFiniteEvaluation, "non-finite profile jet");
  return j;
}

Jetd MetricProfile::jet(double t, double s, int order) const {
  if (!valid(t, s)) throw Error(ErrorCode::DomainViolation, "(t, s) outside the profile validity region");
  return jet_unchecked(t, s, order);
}

PhiJet MetricProfile::phi_jet(double t, double s) const { return PhiJet::from_jet(jet(t, s)); }

MetricProfile hermitian_profile(const ScalarFunction1D& f) {
  ProfileDescriptor desc;
  desc.family = ProfileFamily::Hermitian;
  desc.f = f;
  auto jet = [f](double t, double s, int order) {
    return t_jet(f, t, order) + t_jet(f, t, order, 1) * Jetd::variable_s(s, order);
  };
  auto defined = [f](double t, double) { return f.defined_at(t); };
  auto valid = [f](double t, double s) {
    const auto d = f.derivatives(t, 2);
    return d[0] > 0.0 && d[0] + t * d[1] > 0.0 && d[0] + s * d[1] > 0.0;
  };
  return MetricProfile(std::move(desc), std::move(jet), std::move(defined), std::move(valid));
}

MetricProfile randers_profile(const ScalarFunction1D& f, const ScalarFunction1D& g, const ScalarFunction1D& h) {
  if (h.identically_zero())
    throw Error(ErrorCode::InvalidCatalogEntry, "h == 0 is Hermitian; build it with hermitian_profile");
  ProfileDescriptor desc;
  desc.family = ProfileFamily::Randers;
  desc.f = f;
  desc.g = g;
  desc.h = h;
  RandersCoefficients coeffs = [f, g, h](double t, int order) {
    return std::array<Jetd, 3>{t_jet(f, t, order), t_jet(g, t, order), t_jet(h, t, order)};
  };
  auto t_ok = [f, g, h](double t) { return f.defined_at(t) && g.defined_at(t) && h.defined_at(t); };
  return make_randers(std::move(desc), std::move(coeffs), std::move(t_ok));
}

namespace {

MetricProfile wk_randers_impl(ProfileDescriptor desc, const ScalarFunction1D& f, double h_scale,
                              std::function<bool(double)> extra_t_ok) {
  RandersCoefficients coeffs = [f, h_scale](double t, int order) {
    const Jetd T = Jetd::variable_t(t, order);
    const Jetd F = t_jet(f, t, order);
    const Jetd Fp = t_jet(f, t, order, 1);
    const Jetd G = (T * Fp - F) / (2.0 * T);
    const Jetd H = h_scale * (T * Fp + F) / (2.0 * T);
    return std::array<Jetd, 3>{F, G, H};
  };
  auto t_ok = [f, extra_t_ok](double t) {
    if (!(t > 0.0) || !f.defined_at(t) || !extra_t_ok(t)) return false;
    const auto d = f.derivatives(t, 2);
    return d[0] > 0.0 && t * d[1] + d[0] > 0.0;
  };
  return make_randers(std::move(desc), std::move(coeffs), std::move(t_ok));
}

}  // namespace

MetricProfile wk_randers_profile(const ScalarFunction1D& f, double h_scale) {
  if (!(h_scale > 0.0) || !std::isfinite(h_scale))
    throw Error(ErrorCode::InvalidCatalogEntry, "h_scale must be positive");
  ProfileDescriptor desc;
  desc.family = ProfileFamily::WkRanders;
  desc.f = f;
  desc.h_scale = h_scale;
  return wk_randers_impl(std::move(desc), f, h_scale, [](double) { return true; });
}

MetricProfile model_profile(int k, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidCatalogEntry, "model parameter c must be positive");
  ProfileDescriptor desc;
  desc.family = ProfileFamily::Model;
  desc.k = k;
  desc.c = c;
  switch (k) {
    case 4:
      desc.f = ScalarFunction1D::rational(c * c, 1.0);
      return wk_randers_impl(desc, *desc.f, 1.0, [](double t) { return t > 0.0; });
    case 0:
      desc.f = ScalarFunction1D::linear(c);
      return wk_randers_impl(desc, *desc.f, 1.0, [](double t) { return t >= 0.0; });
    case -4:
      desc.f = ScalarFunction1D::rational(c * c, -1.0);
      return wk_randers_impl(desc, *desc.f, 1.0, [c](double t) { return t > 0.0 && t < c; });
    default:
      throw Error(ErrorCode::InvalidCurvatureTag, "model curvature must be one of +4, 0, -4");
  }
}

MetricProfile make_profile(const ProfileDescriptor& d) {
  auto need = [](const std::optional<ScalarFunction1D>& fn, const char* name) -> const ScalarFunction1D& {
    if (!fn) throw Error(ErrorCode::ConfigError, std::string("profile descriptor is missing ") + name);
    return *fn;
  };
  switch (d.family) {
    case ProfileFamily::Hermitian: return hermitian_profile(need(d.f, "f"));
    case ProfileFamily::Randers: return randers_profile(need(d.f, "f"), need(d.g, "g"), need(d.h, "h"));
    case ProfileFamily::WkRanders: return wk_randers_profile(need(d.f, "f"), d.h_scale);
    case ProfileFamily::Model: return model_profile(d.k, d.c);
  }
  throw Error(ErrorCode::ConfigError, "unknown profile family");
}

}  // namespace cfinsler
