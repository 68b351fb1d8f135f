#include <doctest.h>

#include <cmath>
#include <limits>

#include "cfinsler/core/hermitian.hpp"
#include "cfinsler/core/wirtinger.hpp"
#include "cfinsler/harness/rng.hpp"

using namespace cfinsler;

namespace {

cvec vec(std::initializer_list<cplx> xs) {
  cvec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v[i++] = x;
  return v;
}

const cplx I(0, 1);

}  // namespace

TEST_CASE("wirtinger_gradient of a bilinear field is exact") {
  auto field = [](const cvec& w) { return w[0] * std::conj(w[1]); };
  const auto g = wirtinger_gradient(field, vec({1, 2}), FDConfigd{});
  CHECK(std::abs(g.holo[0] - cplx(2)) < 1e-12);
  CHECK(std::abs(g.holo[1]) < 1e-12);
  CHECK(std::abs(g.anti[0]) < 1e-12);
  CHECK(std::abs(g.anti[1] - cplx(1)) < 1e-12);
}

TEST_CASE("wirtinger_gradient of |w|^2 in one variable") {
  auto field = [](const cvec& w) { return std::norm(w[0]); };
  const auto g = wirtinger_gradient(field, vec({3}), FDConfigd{});
  CHECK(std::abs(g.holo[0] - cplx(3)) < 1e-10);
  CHECK(std::abs(g.anti[0] - cplx(3)) < 1e-10);
}

TEST_CASE("wirtinger_gradient of exp(w + wbar) matches the closed form") {
  auto field = [](const cvec& w) { return std::exp(w[0] + std::conj(w[0])); };
  const cvec p = vec({cplx(0.2, 0.1)});
  const auto g = wirtinger_gradient(field, p, FDConfigd{});
  const double exact = std::exp(0.4);
  CHECK(std::abs(g.holo[0] - exact) < 1e-8);
  CHECK(std::abs(g.anti[0] - exact) < 1e-8);
}

TEST_CASE("real fields have conjugate holomorphic and antiholomorphic partials") {
  auto field = [](const cvec& w) { return std::exp(w[0].real() * w[1].imag()) + std::norm(w[0] * w[1]); };
  FDConfigd cfg;
  const auto g = wirtinger_gradient(field, vec({cplx(0.3, -0.7), cplx(1.1, 0.4)}), cfg);
  for (int a = 0; a < 2; ++a) CHECK(std::abs(g.anti[a] - std::conj(g.holo[a])) < 10 * cfg.step * cfg.step);
}

TEST_CASE("one Richardson level more gains at least a factor 10 on the exp example") {
  auto field = [](const cvec& w) { return std::exp(w[0] + std::conj(w[0])); };
  const cvec p = vec({cplx(0.2, 0.1)});
  const double exact = std::exp(0.4);
  FDConfigd one;
  one.step = 0.05;
  one.richardson_levels = 1;
  FDConfigd two = one;
  two.richardson_levels = 2;
  const double e1 = std::abs(wirtinger_gradient(field, p, one).holo[0] - exact);
  const double e2 = std::abs(wirtinger_gradient(field, p, two).holo[0] - exact);
  CHECK(e1 > 0);
  CHECK(e2 * 10 <= e1);
}

TEST_CASE("stencil errors") {
  const cvec p = vec({1, 2});
  SUBCASE("non-finite values") {
    auto field = [](const cvec& w) { return w[0].real() > 1.0 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
    CHECK_THROWS_AS(wirtinger_gradient(field, p, FDConfigd{}), Error);
    try {
      wirtinger_gradient(field, p, FDConfigd{});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonFiniteEvaluation);
    }
  }
  SUBCASE("validity predicate") {
    auto field = [](const cvec& w) { return std::norm(w[0]); };
    auto valid = [](const cvec& w) { return w[0].real() <= 1.0; };
    try {
      wirtinger_mixed_hessian(field, p, FDConfigd{}, valid);
      FAIL("expected StencilOutsideDomain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::StencilOutsideDomain);
    }
  }
  SUBCASE("invalid configuration") {
    auto field = [](const cvec& w) { return std::norm(w[0]); };
    FDConfigd bad;
    bad.step = 0;
    CHECK_THROWS_AS(wirtinger_gradient(field, p, bad), Error);
    bad.step = 1e-3;
    bad.richardson_levels = 5;
    CHECK_THROWS_AS(wirtinger_gradient(field, p, bad), Error);
  }
}

TEST_CASE("wirtinger_mixed_hessian examples") {
  SUBCASE("sum of squared moduli is the identity") {
    auto field = [](const cvec& w) { return w.squaredNorm(); };
    const auto h = wirtinger_mixed_hessian(field, vec({cplx(0.3, 1.2), cplx(-2, 0.5)}), FDConfigd{});
    CHECK((h - cmat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("|w1 w2|^2 at (1, 2)") {
    auto field = [](const cvec& w) { return std::norm(w[0] * w[1]); };
    const auto h = wirtinger_mixed_hessian(field, vec({1, 2}), FDConfigd{});
    cmat expected(2, 2);
    expected << 4, 2, 2, 1;
    CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("real fields give Hermitian results") {
    auto field = [](const cvec& w) { return std::exp(0.3 * w[0].real()) * std::norm(w[1] + I * w[0]); };
    const auto h = wirtinger_mixed_hessian(field, vec({cplx(0.5, 0.1), cplx(-0.2, 0.9)}), FDConfigd{});
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("an inconsistent real field raises HermitianViolation") {
    // Each evaluation adds fresh noise, so the two triangles disagree.
    SplitMix64 rng(7);
    auto field = [&rng](const cvec& w) { return w.squaredNorm() + 1e-3 * rng.uniform(); };
    try {
      wirtinger_mixed_hessian(field, vec({1, 2}), FDConfigd{});
      FAIL("expected HermitianViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::HermitianViolation);
    }
  }
  SUBCASE("complex-vector-valued fields") {
    auto field = [](const cvec& w) {
      cvec out(2);
      out << w[0] * std::conj(w[1]), std::norm(w[0]);
      return out;
    };
    const auto holo_anti = wirtinger_partials(field, vec({cplx(1, 1), cplx(2, -1)}), FDConfigd{});
    CHECK(std::abs(holo_anti.first[0][0] - std::conj(cplx(2, -1))) < 1e-10);
    CHECK(std::abs(holo_anti.second[1][0] - cplx(1, 1)) < 1e-10);
    CHECK(std::abs(holo_anti.first[0][1] - std::conj(cplx(1, 1))) < 1e-10);
  }
}

TEST_CASE("hermitian_inverse_det examples") {
  SUBCASE("identity") {
    const auto r = hermitian_inverse_det<double>(cmat::Identity(3, 3));
    CHECK(r.det == doctest::Approx(1.0));
    CHECK((r.inverse - cmat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("diag(2, 1)") {
    cmat m = cmat::Zero(2, 2);
    m(0, 0) = 2;
    m(1, 1) = 1;
    const auto r = hermitian_inverse_det<double>(m);
    CHECK(r.det == doctest::Approx(2.0));
    CHECK(std::abs(r.inverse(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(r.inverse(1, 1) - 1.0) < 1e-15);
  }
  SUBCASE("[[2, i], [-i, 2]]") {
    cmat m(2, 2);
    m << 2, I, -I, 2;
    const auto r = hermitian_inverse_det<double>(m);
    cmat expected(2, 2);
    expected << 2, -I, I, 2;
    expected /= 3.0;
    CHECK(r.det == doctest::Approx(3.0).epsilon(1e-14));
    CHECK((r.inverse - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("singular matrices are rejected") {
    cmat m(2, 2);
    m << 1, 1, 1, 1;
    try {
      hermitian_inverse_det<double>(m);
      FAIL("expected SingularMatrix");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularMatrix);
    }
  }
  SUBCASE("inverse times matrix is the identity for well-conditioned inputs") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + trial % 4;
      cmat b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = cplx(rng.normal(), rng.normal());
      const cmat m = b * b.adjoint() + cmat::Identity(n, n);
      const auto r = hermitian_inverse_det<double>(m);
      CHECK((r.inverse * m - cmat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(r.det == doctest::Approx(m.determinant().real()).epsilon(1e-10));
    }
  }
}

TEST_CASE("positive_definite examples") {
  CHECK(positive_definite<double>(cmat::Identity(2, 2)));
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  CHECK_FALSE(positive_definite<double>(m));
  cmat h(2, 2);
  h << 2, I, -I, 2;
  CHECK(positive_definite<double>(h));
  h << 1, 2, 2, 1;
  CHECK_FALSE(positive_definite<double>(h));
  CHECK_FALSE(positive_definite<double>(cmat::Zero(2, 2)));
}

TEST_CASE("core numerics work in long double") {
  using cvecl = ComplexVec<long double>;
  cvecl p(1);
  p[0] = std::complex<long double>(0.2L, 0.1L);
  auto field = [](const cvecl& w) { return std::exp(w[0] + std::conj(w[0])); };
  FDConfig<long double> cfg;
  const auto g = wirtinger_gradient(field, p, cfg);
  CHECK(std::abs(g.holo[0] - std::exp(0.4L)) < 1e-9L);
}
