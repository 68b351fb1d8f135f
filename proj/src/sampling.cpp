#include "cfinsler/harness/sampling.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "cfinsler/curvature.hpp"

namespace cfinsler {

namespace {

cvec gaussian_vector(int n, SplitMix64& rng) {
  cvec x(n);
  for (int i = 0; i < n; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    x[i] = cplx(re, im);
  }
  return x;
}

}  // namespace

Interval default_t_range(const ProfileDescriptor& profile) {
  if (profile.family == ProfileFamily::Model && profile.k == -4) return {0.05 * profile.c, 0.95 * profile.c};
  return {0.2, 2.0};
}

void SampleSpec::validate(const ProfileDescriptor& profile) const {
  if (n < 2) throw Error(ErrorCode::ConfigError, "sample.n: dimension must be at least 2");
  if (count < 1) throw Error(ErrorCode::ConfigError, "sample.count: must be positive");
  if (!(t_range.lo >= 0.0 && t_range.lo < t_range.hi && std::isfinite(t_range.hi)))
    throw Error(ErrorCode::ConfigError, "sample.t_range: need 0 <= lo < hi < inf");
  if (!(s_fraction_range.lo > kInteriorMargin && s_fraction_range.lo < s_fraction_range.hi &&
        s_fraction_range.hi < 1.0 - kInteriorMargin))
    throw Error(ErrorCode::ConfigError, "sample.s_fraction_range: must be a nonempty sub-interval of (1e-6, 1-1e-6)");
  if (profile.family == ProfileFamily::Model && profile.k == -4 && t_range.hi > profile.c)
    throw Error(ErrorCode::ConfigError, "sample.t_range: the k = -4 model needs t < c");
  if (profile.family == ProfileFamily::Model && profile.k == 4 && !(t_range.lo >= 0.0))
    throw Error(ErrorCode::ConfigError, "sample.t_range: the k = 4 model needs t > 0");
}

SampleSet sample_domain(const SampleSpec& spec, const MetricProfile& profile) {
  spec.validate(profile.descriptor());
  SampleSet out;
  for (int i = 0; i < spec.count; ++i) {
    SplitMix64 rng = SplitMix64::stream(spec.seed, static_cast<std::uint64_t>(i));
    const double t = rng.uniform(spec.t_range.lo, spec.t_range.hi);
    const double q = rng.uniform(spec.s_fraction_range.lo, spec.s_fraction_range.hi);
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double scale = rng.uniform(0.5, 2.0);

    cvec zhat = gaussian_vector(spec.n, rng);
    zhat.normalize();
    cvec w = gaussian_vector(spec.n, rng);
    w -= zhat * zhat.dot(w);
    const double wn = w.norm();
    if (!(wn > 1e-12)) {
      out.rejections.push_back({i, "degenerate orthogonal direction"});
      continue;
    }
    w /= wn;

    const cvec z = std::sqrt(t) * zhat;
    const cvec v = scale * (std::sqrt(q) * std::polar(1.0, phase) * zhat + std::sqrt(1.0 - q) * w);
    PointVector pv(z, v);
    if (!interior(pv.t(), pv.s())) {
      out.rejections.push_back({i, "outside interior band kInteriorMargin < s/t < 1 - kInteriorMargin"});
      continue;
    }
    if (!profile.valid(pv.t(), pv.s())) {
      out.rejections.push_back({i, "outside profile validity region"});
      continue;
    }
    out.samples.push_back({i, std::move(pv)});
  }
  if (out.rejections.size() * 10 > static_cast<std::size_t>(spec.count) * 9)
    throw Error(ErrorCode::EmptyAfterRejection,
                std::to_string(out.rejections.size()) + " of " + std::to_string(spec.count) + " draws rejected");
  return out;
}

cmat random_unitary(int n, SplitMix64& rng) {
  cmat g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = gaussian_vector(n, rng);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ() * cmat::Identity(n, n);
  const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace cfinsler
