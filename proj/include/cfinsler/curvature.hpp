#pragma once

// U/W transform, weakly Kahler residuals, holomorphic curvature and the
// Kahler-type classification for unitary-invariant metrics.
//
// With U = (s phi + s(t-s) phi_s) / phi and W = (phi_t + phi_s) / phi, the
// weakly Kahler condition reads s U (U-t) W_s - s (U-t) U_s W - 2 (U-s) U_s = 0.

#include <optional>

#include "cfinsler/tensors.hpp"

namespace cfinsler {

/// Operations dividing by s or (t - s) need kInteriorMargin * t <= s <= (1 - kInteriorMargin) * t.
inline constexpr double kInteriorMargin = 1e-6;
/// Residual threshold below which a sample counts as weakly Kahler.
inline constexpr double kWeaklyKahlerTol = 1e-8;
inline constexpr double kDegenerateUs = 1e-12;

bool interior(double t, double s);

struct UWData {
  double U = 0, W = 0, U_s = 0, U_t = 0, W_s = 0, W_t = 0;
};

/// U and W as order-2 jets built from an order-3 phi jet.
struct UWJets {
  Jetd U, W;
};
UWJets uw_jets(const Jetd& phi, double t, double s);

UWData uw(const MetricProfile& profile, double t, double s);

/// Left side of the phi-form weakly Kahler equation, divided by phi^3.
double wk_residual_phi(const MetricProfile& profile, double t, double s);

/// Left side of the U/W-form weakly Kahler equation (already scale-free).
double wk_residual_uw(const MetricProfile& profile, double t, double s);

/// s (U_t + U_s) - s^2 (t-s) W_s - U; vanishes for every profile.
double lemma_integrability_residual(const MetricProfile& profile, double t, double s);

/// dk2/ds + U dk3/ds; vanishes for every profile.
double k2_k3_identity_residual(const MetricProfile& profile, double t, double s);

/// K_F = -(2/G^2) G_a delta_cbar(N^a_b) v^b conj(v^c), with
/// delta_cbar = d/dzbar^c - conj(N^m_c) d/dvbar^m applied to the closed-form
/// nonlinear connection by Wirtinger finite differences.
double holomorphic_curvature_direct(const MetricProfile& profile, const PointVector& pv,
                                    const FDConfigd& cfg = {});

/// K_F from k2, k3 and their (t, s) partials.
double holomorphic_curvature_closed(const MetricProfile& profile, double t, double s);
double holomorphic_curvature_closed(const MetricProfile& profile, const PointVector& pv);

/// K_F = -(2/phi){s(W_t + W_s) - s^2 (t-s) W_s^2 / U_s + W}. Only valid on
/// the weakly Kahler locus; throws NotWeaklyKahler when the U/W residual at
/// (t, s) is not below kWeaklyKahlerTol.
double holomorphic_curvature_wk(const MetricProfile& profile, double t, double s);
double holomorphic_curvature_wk(const MetricProfile& profile, const PointVector& pv);

struct SprayIdentityResiduals {
  double r1 = 0;  // k1 - U_s phi^2
  double r2 = 0;  // k2 - (W U_s - U W_s) / U_s
  double r3 = 0;  // k3 - W_s / U_s
  double r_wk = 0;  // k2 + 2 (U-s) / (s (U-t)); zero only on weakly Kahler profiles
};
SprayIdentityResiduals wk_spray_identities_residual(const MetricProfile& profile, double t, double s);

/// Max-norm torsion residuals, each divided by a bound on the quantities it
/// contracts, so that weakly <= kahler <= strong holds identically.
struct KahlerReport {
  double strong_residual = 0;  // max |Gamma^a_{b;c} - Gamma^a_{c;b}| / max |Gamma|
  double kahler_residual = 0;  // max |(...) v^c| / (max |Gamma| |v|_1)
  double weakly_residual = 0;  // max |G_a (...) v^c| / (|G_a|_1 max |Gamma| |v|_1)
};
KahlerReport kahler_classify(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg = {});

struct CurvatureReport {
  double kf_direct = 0;
  double kf_closed = 0;
  std::optional<double> kf_wk;  // only where the sample is on the weakly Kahler locus
  double pairwise_dev = 0;
};
CurvatureReport curvature_report(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg = {});

}  // namespace cfinsler
