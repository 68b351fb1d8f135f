#include "cfinsler/tensors.hpp"

#include <cmath>

#include "cfinsler/core/wirtinger.hpp"

namespace cfinsler {

namespace {

struct Split {
  cvec z, v;
};

Split split(const cvec& w) {
  const Eigen::Index n = w.size() / 2;
  return {w.head(n), w.tail(n)};
}

cvec join(const cvec& z, const cvec& v) {
  cvec w(z.size() + v.size());
  w << z, v;
  return w;
}

}  // namespace

Invariants invariants(const cvec& z, const cvec& v) {
  if (z.size() != v.size()) throw Error(ErrorCode::ConfigError, "z and v must have the same dimension");
  const double r = v.squaredNorm();
  if (!(r > 0.0)) throw Error(ErrorCode::ZeroVector, "tangent vector must be nonzero");
  const double t = z.squaredNorm();
  // sum z^a conj(v^a); Eigen's dot conjugates its first argument.
  const cplx pairing = v.dot(z);
  const double s = std::min(std::norm(pairing) / r, t);
  return {r, t, s, pairing};
}

PointVector::PointVector(cvec z, cvec v) : z_(std::move(z)), v_(std::move(v)) {
  if (z_.size() < 2) throw Error(ErrorCode::ConfigError, "dimension n must be at least 2");
  if (!z_.allFinite() || !v_.allFinite()) throw Error(ErrorCode::NonFiniteEvaluation, "non-finite point or vector");
  const Invariants inv = invariants(z_, v_);
  r_ = inv.r;
  t_ = inv.t;
  s_ = inv.s;
  pairing_ = inv.pairing;
}

cvec s_gradient(const cvec& z, const cvec& v) {
  const Invariants inv = invariants(z, v);
  const double p2 = std::norm(inv.pairing);
  return (-p2 / (inv.r * inv.r)) * v.conjugate() + (inv.pairing / inv.r) * z.conjugate();
}

cmat levi_matrix_closed(const MetricProfile& profile, const cvec& z, const cvec& v) {
  const Invariants inv = invariants(z, v);
  const Jetd j = profile.jet_unchecked(inv.t, inv.s, 2);
  const double phi = j.partial(0, 0), phi_s = j.partial(0, 1), phi_ss = j.partial(0, 2);
  const cvec sa = s_gradient(z, v);
  const Eigen::Index n = z.size();
  cmat a = (phi - inv.s * phi_s) * cmat::Identity(n, n);
  a += (inv.r * phi_ss) * sa * sa.adjoint();
  a += phi_s * z.conjugate() * z.transpose();
  return a;
}

LeviData levi_closed(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg) {
  if (!profile.valid(pv.t(), pv.s())) throw Error(ErrorCode::DomainViolation, "sample outside profile validity");
  LeviData d;
  d.levi = levi_matrix_closed(profile, pv.z(), pv.v());
  auto [inverse, det] = hermitian_inverse_det(d.levi, cfg);
  d.inverse = std::move(inverse);
  d.det = det;
  const Jetd j = profile.jet(pv.t(), pv.s(), 1);
  d.g_alpha = j.partial(0, 0) * pv.v().conjugate() + (pv.r() * j.partial(0, 1)) * s_gradient(pv.z(), pv.v());
  d.G = pv.r() * j.partial(0, 0);
  return d;
}

HermitianMatrix<double> levi_oracle(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg) {
  const cvec z = pv.z();
  auto G = [&](const cvec& v) {
    const Invariants inv = invariants(z, v);
    return inv.r * profile.value(inv.t, inv.s);
  };
  auto valid = [&](const cvec& v) {
    const double r = v.squaredNorm();
    if (!(r > 0.0)) return false;
    const Invariants inv = invariants(z, v);
    return profile.valid(inv.t, inv.s);
  };
  return wirtinger_mixed_hessian(G, pv.v(), cfg, valid);
}

PseudoConvexity pseudoconvexity_check(const MetricProfile& profile, double t, double s) {
  const Jetd j = profile.jet_unchecked(t, s, 2);
  const double phi = j.partial(0, 0), phi_s = j.partial(0, 1), phi_ss = j.partial(0, 2);
  PseudoConvexity pc;
  pc.cond1 = phi - s * phi_s;
  pc.cond2 = pc.cond1 * (phi + (t - s) * phi_s) + s * (t - s) * phi * phi_ss;
  pc.ok = pc.cond1 > 0.0 && pc.cond2 > 0.0;
  return pc;
}

double det_closed(const MetricProfile& profile, double t, double s, int n) {
  if (n < 2) throw Error(ErrorCode::ConfigError, "dimension n must be at least 2");
  if (!profile.valid(t, s)) throw Error(ErrorCode::DomainViolation, "(t, s) outside profile validity");
  const PseudoConvexity pc = pseudoconvexity_check(profile, t, s);
  return pc.cond2 * std::pow(pc.cond1, n - 2);
}

SprayScalarJets spray_scalar_jets(const Jetd& phi, double t, double s) {
  const Jetd T = Jetd::variable_t(t, 1);
  const Jetd S = Jetd::variable_s(s, 1);
  const Jetd p = phi.truncated(1);
  const Jetd p_t = phi.dt().truncated(1);
  const Jetd p_s = phi.ds().truncated(1);
  const Jetd p_ss = phi.ds().ds();
  const Jetd p_st = phi.ds().dt();
  const Jetd tms = T - S;

  SprayScalarJets k;
  const Jetd hermitian_like = p + tms * p_s;  // phi + (t-s) phi_s
  k.k1 = (p - S * p_s) * hermitian_like + S * tms * p * p_ss;
  k.k2 = ((hermitian_like + S * tms * p_ss) * (p_t + p_s) - S * hermitian_like * (p_st + p_ss)) / k.k1;
  k.k3 = (p * (p_st + p_ss) - p_s * (p_t + p_s)) / k.k1;
  return k;
}

SprayData spray_coefficients(const MetricProfile& profile, const PointVector& pv, const FDConfigd&) {
  const Jetd phi = profile.jet(pv.t(), pv.s());
  const SprayScalarJets k = spray_scalar_jets(phi, pv.t(), pv.s());
  if (std::abs(k.k1.value()) < kDegenerateK1 * phi.value() * phi.value())
    throw Error(ErrorCode::DegenerateK1, "k1 vanishes at this sample");
  SprayData d;
  d.k1 = k.k1.value();
  d.k2 = k.k2.value();
  d.k3 = k.k3.value();
  const cplx pbar = std::conj(pv.pairing());
  d.spray = (d.k2 * pbar) * pv.v() + (d.k3 * pbar * pbar) * pv.z();
  d.nconn = nconn_closed(profile, pv.z(), pv.v());
  return d;
}

namespace {

// Solve conj(levi) N = gmix, i.e. N^a_b = G^{a cbar} gmix(c, b).
cmat contract_inverse(const cmat& levi, const cmat& gmix) {
  return levi.conjugate().partialPivLu().solve(gmix);
}

}  // namespace

cmat nconn_closed(const MetricProfile& profile, const cvec& z, const cvec& v) {
  const Invariants inv = invariants(z, v);
  const Jetd j = profile.jet_unchecked(inv.t, inv.s, 2);
  const double phi_t = j.partial(1, 0), phi_s = j.partial(0, 1);
  const double phi_ts = j.partial(1, 1), phi_ss = j.partial(0, 2);
  const double r = inv.r;
  const cplx pbar = std::conj(inv.pairing);
  const Eigen::Index n = z.size();

  const cvec sbar = s_gradient(z, v).conjugate();  // ds/dvbar^c
  const cvec sz = (pbar / r) * v.conjugate();       // ds/dz^b
  const cvec tz = z.conjugate();                    // dt/dz^b

  // gmix(c, b) = d^2 G / dvbar^c dz^b, G_cbar = v^c phi + r phi_s ds/dvbar^c.
  cmat gmix = v * (phi_t * tz + phi_s * sz).transpose();
  gmix += r * sbar * (phi_ts * tz + phi_ss * sz).transpose();
  cmat dsbar = (-pbar / (r * r)) * v * v.adjoint() + (pbar / r) * cmat::Identity(n, n);
  gmix += (r * phi_s) * dsbar;

  return contract_inverse(levi_matrix_closed(profile, z, v), gmix);
}

cmat nconn_oracle(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg) {
  const Eigen::Index n = pv.n();
  auto G = [&](const cvec& w) {
    const auto [z, v] = split(w);
    const Invariants inv = invariants(z, v);
    return inv.r * profile.value(inv.t, inv.s);
  };
  auto valid = [&](const cvec& w) {
    const auto [z, v] = split(w);
    if (!(v.squaredNorm() > 0.0)) return false;
    const Invariants inv = invariants(z, v);
    return profile.valid(inv.t, inv.s);
  };
  const cmat h = wirtinger_mixed_hessian(G, join(pv.z(), pv.v()), cfg, valid);
  // h(a, b) = d^2 G / dw^a dwbar^b; we need d^2 G / dvbar^c dz^b = h(b, n + c).
  const cmat gmix = h.block(0, n, n, n).transpose();
  return contract_inverse(levi_matrix_closed(profile, pv.z(), pv.v()), gmix);
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (const auto& s : slices_) m = std::max(m, s.cwiseAbs().maxCoeff());
  return m;
}

ConnectionData connection_coefficients(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg) {
  const Eigen::Index n = pv.n();
  const LeviData levi = levi_closed(profile, pv, cfg);
  const cmat nconn = nconn_closed(profile, pv.z(), pv.v());

  auto field = [&](const cvec& w) {
    const auto [z, v] = split(w);
    return levi_matrix_closed(profile, z, v);
  };
  auto valid = [&](const cvec& w) {
    const auto [z, v] = split(w);
    if (!(v.squaredNorm() > 0.0)) return false;
    const Invariants inv = invariants(z, v);
    return profile.valid(inv.t, inv.s);
  };
  const auto [holo, anti] = wirtinger_partials(field, join(pv.z(), pv.v()), cfg, valid);
  (void)anti;

  ConnectionData out{Tensor3(n), Tensor3(n)};
  for (Eigen::Index c = 0; c < n; ++c) {
    cmat delta = holo[c];
    for (Eigen::Index m = 0; m < n; ++m) delta -= nconn(m, c) * holo[n + m];
    // Gamma^a_{b;c} = sum_e G^{a ebar} delta(b, e) = (delta * levi^{-1})(b, a).
    const cmat hg = delta * levi.inverse;
    const cmat hc = holo[n + c] * levi.inverse;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        out.gamma(a, b, c) = hg(b, a);
        out.cee(a, b, c) = hc(b, a);
      }
  }
  return out;
}

}  // namespace cfinsler
