#pragma once

// Pointwise tensors of F = sqrt(r phi(t, s)): invariants, Levi matrix,
// spray, nonlinear connection and Chern-Finsler connection coefficients.
//
// Pairing convention: <z, v> = sum_a z^a conj(v^a).
// Index convention for the inverse Levi matrix: G^{a bbar} is the (b, a)
// entry of the ordinary matrix inverse of levi, i.e. sum_c G^{a cbar} G_{b cbar} = delta.

#include <vector>

#include "cfinsler/core/hermitian.hpp"
#include "cfinsler/core/types.hpp"
#include "cfinsler/profiles/profile.hpp"

namespace cfinsler {

/// Base point z and tangent vector v, both in C^n with n >= 2 and v != 0.
class PointVector {
 public:
  PointVector(cvec z, cvec v);

  const cvec& z() const { return z_; }
  const cvec& v() const { return v_; }
  Eigen::Index n() const { return z_.size(); }

  double r() const { return r_; }
  double t() const { return t_; }
  double s() const { return s_; }
  cplx pairing() const { return pairing_; }

 private:
  cvec z_, v_;
  double r_, t_, s_;
  cplx pairing_;
};

struct Invariants {
  double r, t, s;
  cplx pairing;  // sum z^a conj(v^a)
};

/// r = |v|^2, t = |z|^2, s = |<z,v>|^2 / r. Throws ZeroVector for v == 0.
Invariants invariants(const cvec& z, const cvec& v);

/// ds/dv^a = -|<z,v>|^2 conj(v^a) / r^2 + <z,v> conj(z^a) / r.
cvec s_gradient(const cvec& z, const cvec& v);

struct LeviData {
  HermitianMatrix<double> levi;     // G_{a bbar}
  HermitianMatrix<double> inverse;  // levi^{-1}; G^{a bbar} = inverse(b, a)
  double det = 0;
  cvec g_alpha;                     // G_a = dG/dv^a
  double G = 0;                     // r phi
};

/// Levi matrix from the closed form, without factorization. Requires profile.defined(t, s).
cmat levi_matrix_closed(const MetricProfile& profile, const cvec& z, const cvec& v);

LeviData levi_closed(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg = {});

/// Mixed Wirtinger Hessian in v of G(z, .) = r phi(t, s(.)).
HermitianMatrix<double> levi_oracle(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg = {});

/// {(phi - s phi_s)[phi + (t-s) phi_s] + s(t-s) phi phi_ss} (phi - s phi_s)^{n-2}.
double det_closed(const MetricProfile& profile, double t, double s, int n);

struct PseudoConvexity {
  double cond1;  // phi - s phi_s
  double cond2;  // (phi - s phi_s)[phi + (t-s) phi_s] + s(t-s) phi phi_ss
  bool ok;
};

/// Evaluates both strong pseudo-convexity conditions wherever the profile's jet
/// is defined, including points where the profile itself is not admissible.
PseudoConvexity pseudoconvexity_check(const MetricProfile& profile, double t, double s);

/// k1, k2, k3 as order-1 jets in (t, s), built from an order-3 phi jet.
struct SprayScalarJets {
  Jetd k1, k2, k3;
};
SprayScalarJets spray_scalar_jets(const Jetd& phi, double t, double s);

/// Threshold: |k1| < kDegenerateK1 * phi^2 is treated as degenerate.
inline constexpr double kDegenerateK1 = 1e-12;

struct SprayData {
  double k1 = 0, k2 = 0, k3 = 0;
  cvec spray;  // 2 G^a = k2 conj<z,v> v^a + k3 conj<z,v>^2 z^a
  cmat nconn;  // N^a_b (row a, column b), chain-rule closed form
};

SprayData spray_coefficients(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg = {});

/// N^a_b = G^{a cbar} G_{cbar;b} with G_{cbar;b} by the chain rule through phi_t, phi_s, phi_ts, phi_ss.
cmat nconn_closed(const MetricProfile& profile, const cvec& z, const cvec& v);

/// Same contraction with G_{cbar;b} = d^2 G / dvbar^c dz^b by Wirtinger finite differences of G.
cmat nconn_oracle(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg = {});

/// Three-index complex arrays stored as one n x n matrix per leading index.
class Tensor3 {
 public:
  explicit Tensor3(Eigen::Index n = 0) : slices_(n, cmat::Zero(n, n)) {}
  cplx& operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c) { return slices_[a](b, c); }
  cplx operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c) const { return slices_[a](b, c); }
  Eigen::Index n() const { return static_cast<Eigen::Index>(slices_.size()); }
  double max_abs() const;

 private:
  std::vector<cmat> slices_;
};

struct ConnectionData {
  Tensor3 gamma;  // gamma(a, b, c) = Gamma^a_{b;c}
  Tensor3 cee;    // cee(a, b, c) = C^a_{bc}
};

/// Gamma^a_{b;c} = G^{a ebar} delta G_{b ebar} / delta z^c and C^a_{bc} = G^{a ebar} dG_{b ebar}/dv^c,
/// with delta/delta z^c = d/dz^c - N^m_c d/dv^m; derivatives of the closed-form
/// Levi matrix by Wirtinger finite differences.
ConnectionData connection_coefficients(const MetricProfile& profile, const PointVector& pv,
                                       const FDConfigd& cfg = {});

}  // namespace cfinsler
