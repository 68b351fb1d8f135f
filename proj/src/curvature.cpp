#include "cfinsler/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "cfinsler/core/wirtinger.hpp"

namespace cfinsler {

bool interior(double t, double s) {
  return std::isfinite(t) && std::isfinite(s) && t > 0.0 && s >= kInteriorMargin * t &&
         s <= (1.0 - kInteriorMargin) * t;
}

namespace {

Jetd interior_jet(const MetricProfile& profile, double t, double s) {
  if (!interior(t, s)) throw Error(ErrorCode::DomainViolation, "(t, s) too close to s = 0 or s = t");
  return profile.jet(t, s);
}

}  // namespace

UWJets uw_jets(const Jetd& phi, double t, double s) {
  const Jetd T = Jetd::variable_t(t, 2);
  const Jetd S = Jetd::variable_s(s, 2);
  const Jetd p = phi.truncated(2);
  const Jetd p_t = phi.dt();
  const Jetd p_s = phi.ds();
  return {S + S * (T - S) * p_s / p, (p_t + p_s) / p};
}

UWData uw(const MetricProfile& profile, double t, double s) {
  const UWJets j = uw_jets(interior_jet(profile, t, s), t, s);
  return {j.U.value(), j.W.value(), j.U.partial(0, 1), j.U.partial(1, 0), j.W.partial(0, 1), j.W.partial(1, 0)};
}

double wk_residual_phi(const MetricProfile& profile, double t, double s) {
  const PhiJet j = profile.phi_jet(t, s);
  const double tms = t - s;
  const double lhs = (j.phi - s * j.phi_s) * (j.phi + tms * j.phi_s) *
                         (j.phi_s - j.phi_t + s * (j.phi_ts + j.phi_ss)) +
                     s * tms * j.phi_ss * (j.phi * (j.phi_s - j.phi_t) + s * j.phi_s * (j.phi_t + j.phi_s));
  return lhs / (j.phi * j.phi * j.phi);
}

double wk_residual_uw(const MetricProfile& profile, double t, double s) {
  const UWData d = uw(profile, t, s);
  return s * d.U * (d.U - t) * d.W_s - s * (d.U - t) * d.U_s * d.W - 2.0 * (d.U - s) * d.U_s;
}

double lemma_integrability_residual(const MetricProfile& profile, double t, double s) {
  const UWData d = uw(profile, t, s);
  return s * (d.U_t + d.U_s) - s * s * (t - s) * d.W_s - d.U;
}

namespace {

struct ClosedPieces {
  Jetd phi;
  SprayScalarJets k;
  UWJets uw;
};

ClosedPieces closed_pieces(const MetricProfile& profile, double t, double s) {
  const Jetd phi = interior_jet(profile, t, s);
  ClosedPieces c{phi, spray_scalar_jets(phi, t, s), uw_jets(phi, t, s)};
  if (std::abs(c.k.k1.value()) < kDegenerateK1 * phi.value() * phi.value())
    throw Error(ErrorCode::DegenerateK1, "k1 vanishes at this sample");
  return c;
}

}  // namespace

double k2_k3_identity_residual(const MetricProfile& profile, double t, double s) {
  const ClosedPieces c = closed_pieces(profile, t, s);
  return c.k.k2.partial(0, 1) + c.uw.U.value() * c.k.k3.partial(0, 1);
}

double holomorphic_curvature_closed(const MetricProfile& profile, double t, double s) {
  const ClosedPieces c = closed_pieces(profile, t, s);
  const Jetd& k2 = c.k.k2;
  const Jetd& k3 = c.k.k3;
  const double term2 = s * (k2.partial(1, 0) + k2.partial(0, 1)) + k2.value();
  const double term3 = s * (k3.partial(1, 0) + k3.partial(0, 1)) + 2.0 * k3.value();
  return -2.0 / c.phi.value() * (term2 + c.uw.U.value() * term3);
}

double holomorphic_curvature_closed(const MetricProfile& profile, const PointVector& pv) {
  return holomorphic_curvature_closed(profile, pv.t(), pv.s());
}

double holomorphic_curvature_wk(const MetricProfile& profile, double t, double s) {
  if (!(std::abs(wk_residual_uw(profile, t, s)) < kWeaklyKahlerTol))
    throw Error(ErrorCode::NotWeaklyKahler, "profile is not weakly Kahler at this sample");
  const UWData d = uw(profile, t, s);
  if (std::abs(d.U_s) < kDegenerateUs) throw Error(ErrorCode::DegenerateUs, "U_s vanishes at this sample");
  const double phi = profile.value(t, s);
  return -2.0 / phi * (s * (d.W_t + d.W_s) - s * s * (t - s) * d.W_s * d.W_s / d.U_s + d.W);
}

double holomorphic_curvature_wk(const MetricProfile& profile, const PointVector& pv) {
  return holomorphic_curvature_wk(profile, pv.t(), pv.s());
}

SprayIdentityResiduals wk_spray_identities_residual(const MetricProfile& profile, double t, double s) {
  const ClosedPieces c = closed_pieces(profile, t, s);
  const double U = c.uw.U.value(), W = c.uw.W.value();
  const double U_s = c.uw.U.partial(0, 1), W_s = c.uw.W.partial(0, 1);
  if (std::abs(U_s) < kDegenerateUs) throw Error(ErrorCode::DegenerateUs, "U_s vanishes at this sample");
  const double phi = c.phi.value();
  SprayIdentityResiduals r;
  r.r1 = c.k.k1.value() - U_s * phi * phi;
  r.r2 = c.k.k2.value() - (W * U_s - U * W_s) / U_s;
  r.r3 = c.k.k3.value() - W_s / U_s;
  r.r_wk = c.k.k2.value() + 2.0 * (U - s) / (s * (U - t));
  return r;
}

double holomorphic_curvature_direct(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg) {
  if (!interior(pv.t(), pv.s())) throw Error(ErrorCode::DomainViolation, "(t, s) too close to s = 0 or s = t");
  const Eigen::Index n = pv.n();
  const LeviData levi = levi_closed(profile, pv, cfg);
  const cmat nconn = nconn_closed(profile, pv.z(), pv.v());

  // 2 G^a(z, v) = N^a_b(z, v) v^b; v^b is holomorphic, so dvbar of the
  // product equals (dvbar N) v.
  auto spray = [&](const cvec& w) -> cvec {
    const cvec z = w.head(n), v = w.tail(n);
    return nconn_closed(profile, z, v) * v;
  };
  auto valid = [&](const cvec& w) {
    const cvec z = w.head(n), v = w.tail(n);
    if (!(v.squaredNorm() > 0.0)) return false;
    const Invariants inv = invariants(z, v);
    return profile.valid(inv.t, inv.s);
  };
  cvec w(2 * n);
  w << pv.z(), pv.v();
  const auto [holo, anti] = wirtinger_partials(spray, w, cfg, valid);
  (void)holo;

  cvec x = cvec::Zero(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    cvec delta = anti[c];
    for (Eigen::Index m = 0; m < n; ++m) delta -= std::conj(nconn(m, c)) * anti[n + m];
    x += std::conj(pv.v()[c]) * delta;
  }
  const cplx k = -2.0 / (levi.G * levi.G) * levi.g_alpha.transpose() * x;
  return k.real();
}

KahlerReport kahler_classify(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg) {
  const ConnectionData conn = connection_coefficients(profile, pv, cfg);
  const LeviData levi = levi_closed(profile, pv, cfg);
  const Eigen::Index n = pv.n();
  const cvec& v = pv.v();

  double strong = 0.0;
  cmat contracted = cmat::Zero(n, n);  // (a, b): sum_c (Gamma^a_{b;c} - Gamma^a_{c;b}) v^c
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c) {
        const cplx diff = conn.gamma(a, b, c) - conn.gamma(a, c, b);
        strong = std::max(strong, std::abs(diff));
        contracted(a, b) += diff * v[c];
      }
  const cvec weak = levi.g_alpha.transpose() * contracted;

  const double gamma_scale = conn.gamma.max_abs();
  KahlerReport r;
  if (gamma_scale == 0.0) return r;
  const double v_scale = v.cwiseAbs().sum();
  const double g_scale = levi.g_alpha.cwiseAbs().sum();
  r.strong_residual = strong / gamma_scale;
  r.kahler_residual = contracted.cwiseAbs().maxCoeff() / (gamma_scale * v_scale);
  r.weakly_residual = weak.cwiseAbs().maxCoeff() / (g_scale * gamma_scale * v_scale);
  return r;
}

CurvatureReport curvature_report(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg) {
  CurvatureReport r;
  r.kf_direct = holomorphic_curvature_direct(profile, pv, cfg);
  r.kf_closed = holomorphic_curvature_closed(profile, pv);
  if (std::abs(wk_residual_uw(profile, pv.t(), pv.s())) < kWeaklyKahlerTol)
    r.kf_wk = holomorphic_curvature_wk(profile, pv);
  r.pairwise_dev = std::abs(r.kf_direct - r.kf_closed);
  if (r.kf_wk) {
    r.pairwise_dev = std::max(r.pairwise_dev, std::abs(r.kf_direct - *r.kf_wk));
    r.pairwise_dev = std::max(r.pairwise_dev, std::abs(r.kf_closed - *r.kf_wk));
  }
  return r;
}

}  // namespace cfinsler
