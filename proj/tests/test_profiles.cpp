#include <doctest.h>

#include <cmath>
#include <vector>

#include "cfinsler/error.hpp"
#include "cfinsler/profiles/descriptor_json.hpp"
#include "cfinsler/profiles/profile.hpp"
#include "oracles.hpp"

using namespace cfinsler;
using SF = ScalarFunction1D;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::ConfigError;
}

struct Named {
  const char* name;
  MetricProfile profile;
  oracle::Phi phi;
};

std::vector<Named> catalog() {
  using std::exp;
  const oracle::Fn t1 = [](double t) { return t; }, one = [](double) { return 1.0; };
  const oracle::Fn sq = [](double t) { return t * t; }, dsq = [](double t) { return 2 * t; };
  const oracle::Fn ex = [](double t) { return exp(t); };
  const oracle::Fn rat = [](double t) { return t / (1 + t * t); };
  const oracle::Fn drat = [](double t) { return (1 - t * t) / ((1 + t * t) * (1 + t * t)); };
  return {
      {"hermitian t", hermitian_profile(SF::linear(1)), oracle::hermitian(t1, one)},
      {"hermitian t^2", hermitian_profile(SF::power(1, 2)), oracle::hermitian(sq, dsq)},
      {"hermitian e^t", hermitian_profile(SF::exponential(1, 1)), oracle::hermitian(ex, ex)},
      {"hermitian rational", hermitian_profile(SF::rational(1, 1)), oracle::hermitian(rat, drat)},
      {"wk t^2", wk_randers_profile(SF::power(1, 2)), oracle::wk_randers(sq, dsq)},
      {"wk e^t", wk_randers_profile(SF::exponential(1, 1)), oracle::wk_randers(ex, ex)},
      {"wk rational", wk_randers_profile(SF::rational(1, 1)), oracle::wk_randers(rat, drat)},
      {"wk e^t perturbed", wk_randers_profile(SF::exponential(1, 1), 1.1), oracle::wk_randers(ex, ex, 1.1)},
      {"randers", randers_profile(SF::constant(1) + SF::linear(1), SF::constant(0.5), SF::constant(1)),
       oracle::randers([](double t) { return 1 + t; }, [](double) { return 0.5; }, one)},
  };
}

}  // namespace

TEST_CASE("scalar function catalog derivatives") {
  const double t = 0.7;
  SUBCASE("power") {
    const auto d = SF::power(2, 2.5).derivatives(t, 4);
    CHECK(d[0] == doctest::Approx(2 * std::pow(t, 2.5)));
    CHECK(d[1] == doctest::Approx(5 * std::pow(t, 1.5)));
    CHECK(d[2] == doctest::Approx(7.5 * std::pow(t, 0.5)));
    CHECK(d[3] == doctest::Approx(3.75 * std::pow(t, -0.5)));
  }
  SUBCASE("exponential") {
    const auto d = SF::exponential(3, -0.5).derivatives(t, 4);
    for (int k = 0; k < 4; ++k) CHECK(d[k] == doctest::Approx(3 * std::pow(-0.5, k) * std::exp(-0.5 * t)));
  }
  SUBCASE("rational, by the quotient rule") {
    const SF f = SF::rational(2, 3);
    const double q = 2 + 3 * t * t;
    CHECK(f(t) == doctest::Approx(t / q));
    CHECK(f.d1(t) == doctest::Approx((2 - 3 * t * t) / (q * q)));
    for (int k = 1; k <= 3; ++k) {
      const auto lower = [&](double x) { return f.derivatives(x, k)[k - 1]; };
      CHECK(f.derivatives(t, k + 1)[k] == doctest::Approx(oracle::central4(lower, t, 1e-3)).epsilon(1e-8));
    }
  }
  SUBCASE("sums and constants") {
    const SF f = SF::constant(2) + SF::linear(3) + SF::power(1, 3);
    CHECK(f(t) == doctest::Approx(2 + 3 * t + t * t * t));
    CHECK(f.d1(t) == doctest::Approx(3 + 3 * t * t));
    CHECK(f.d3(t) == doctest::Approx(6));
    CHECK(SF::constant(0).identically_zero());
    CHECK(SF::linear(0).identically_zero());
    CHECK_FALSE(SF::linear(1).identically_zero());
  }
  SUBCASE("domains") {
    CHECK_FALSE(SF::rational(1, -1).defined_at(1.0));
    CHECK(SF::rational(1, -1).defined_at(0.5));
    CHECK_FALSE(SF::power(1, -1).defined_at(0.0));
  }
}

TEST_CASE("hermitian_profile examples") {
  SUBCASE("f = 1 is Euclidean") {
    const PhiJet j = hermitian_profile(SF::constant(1)).phi_jet(0.8, 0.3);
    CHECK(j.phi == 1.0);
    for (int i = 0; i <= 3; ++i)
      for (int k = 0; i + k <= 3; ++k)
        if (i + k > 0) CHECK(j.partial(i, k) == 0.0);
  }
  SUBCASE("f = t") {
    const PhiJet j = hermitian_profile(SF::linear(1)).phi_jet(1.3, 0.4);
    CHECK(j.phi == doctest::Approx(1.7));
    CHECK(j.phi_t == doctest::Approx(1.0));
    CHECK(j.phi_s == doctest::Approx(1.0));
    CHECK(j.phi_tt == 0.0);
    CHECK(j.phi_ts == 0.0);
    CHECK(j.phi_ss == 0.0);
    CHECK(hermitian_profile(SF::linear(1)).value(2, 1) == doctest::Approx(3.0));
  }
  SUBCASE("f = t/(1+t^2)") {
    const MetricProfile p = hermitian_profile(SF::rational(1, 1));
    for (double t : {0.3, 0.9, 1.7})
      for (double s : {0.1 * t, 0.6 * t}) {
        const double expected = (1 - t * t) / ((1 + t * t) * (1 + t * t));
        CHECK(p.phi_jet(t, s).phi_s == doctest::Approx(expected).epsilon(1e-13));
      }
  }
  SUBCASE("validity needs f + t f' > 0") {
    CHECK_FALSE(hermitian_profile(SF::power(1, -1)).valid(1.0, 0.5));
    CHECK(code_of([] { hermitian_profile(SF::power(1, -1)).jet(1.0, 0.5); }) == ErrorCode::DomainViolation);
  }
}

TEST_CASE("randers_profile examples") {
  SUBCASE("f = t, g = 0, h = 1 at (1, 0.25)") {
    const MetricProfile p = randers_profile(SF::linear(1), SF::constant(0), SF::constant(1));
    CHECK(p.phi_jet(1, 0.25).phi == doctest::Approx(2.25));
  }
  SUBCASE("f = g = h = 1 at (1, 1)") {
    const MetricProfile p = randers_profile(SF::constant(1), SF::constant(1), SF::constant(1));
    const double expected = (std::sqrt(2.0) + 1) * (std::sqrt(2.0) + 1);
    CHECK(p.value(1, 1) == doctest::Approx(expected));
  }
  SUBCASE("h = 0 is rejected") {
    CHECK(code_of([] { randers_profile(SF::linear(1), SF::constant(0), SF::constant(0)); }) ==
          ErrorCode::InvalidCatalogEntry);
  }
  SUBCASE("non-smooth direction s = 0 is outside validity") {
    const MetricProfile p = randers_profile(SF::linear(1), SF::constant(0), SF::constant(1));
    CHECK_FALSE(p.valid(1.0, 0.0));
    CHECK_FALSE(p.valid(1.0, 1e-8));
    CHECK(p.valid(1.0, 1e-5));
    CHECK(code_of([&] { p.jet(1.0, 0.0); }) == ErrorCode::DomainViolation);
  }
  SUBCASE("s > t is outside the cone") {
    const MetricProfile p = randers_profile(SF::linear(1), SF::constant(0), SF::constant(1));
    CHECK_FALSE(p.defined(1.0, 1.5));
  }
}

TEST_CASE("wk_randers_profile examples") {
  SUBCASE("f = c t equals randers(c t, 0, c)") {
    for (double c : {0.5, 2.0}) {
      const MetricProfile a = wk_randers_profile(SF::linear(c));
      const MetricProfile b = randers_profile(SF::linear(c), SF::constant(0), SF::constant(c));
      for (double t : {0.4, 1.5}) {
        const double s = 0.3 * t;
        const PhiJet ja = a.phi_jet(t, s), jb = b.phi_jet(t, s);
        for (int i = 0; i <= 3; ++i)
          for (int k = 0; i + k <= 3; ++k)
            CHECK(ja.partial(i, k) == doctest::Approx(jb.partial(i, k)).epsilon(1e-14));
        CHECK(ja.phi == doctest::Approx(c * std::pow(std::sqrt(t) + std::sqrt(s), 2)));
      }
    }
  }
  SUBCASE("f = t/(c^2+t^2) has the k = 4 model coefficients") {
    const double c = 1.5;
    const MetricProfile p = wk_randers_profile(SF::rational(c * c, 1));
    for (double t : {0.3, 1.1, 2.5}) {
      const double s = 0.45 * t, q = c * c + t * t;
      const double f = t / q, g = -t * t / (q * q), h = c * c / (q * q);
      const double expected = std::pow(std::sqrt(f + g * s) + std::sqrt(h * s), 2);
      CHECK(p.value(t, s) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
  SUBCASE("f = e^t at t = 1 gives g = 0, h = e") {
    const double e = std::exp(1.0), s = 0.36;
    const double expected = std::pow(std::sqrt(e) + std::sqrt(e * s), 2);
    CHECK(wk_randers_profile(SF::exponential(1, 1)).value(1.0, s) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("t f' + f <= 0 is outside validity") {
    const MetricProfile p = wk_randers_profile(SF::power(1, -1));
    CHECK_FALSE(p.valid(1.0, 0.5));
    CHECK(code_of([&] { p.phi_jet(1.0, 0.5); }) == ErrorCode::DomainViolation);
  }
}

TEST_CASE("model_profile examples") {
  SUBCASE("k = 0, c = 1 at (1, 0.25)") {
    const PhiJet j = model_profile(0, 1).phi_jet(1, 0.25);
    CHECK(j.phi == doctest::Approx(2.25));
    CHECK(j.phi_s == doctest::Approx(3.0));
    CHECK(j.phi_t == doctest::Approx(1.5));
    const oracle::Phi direct = [](double t, double s) { return std::pow(std::sqrt(t) + std::sqrt(s), 2); };
    CHECK(j.phi_s == doctest::Approx(oracle::partial_s(direct, 1, 0.25)).epsilon(1e-9));
    CHECK(j.phi_t == doctest::Approx(oracle::partial_t(direct, 1, 0.25)).epsilon(1e-9));
  }
  SUBCASE("domains") {
    CHECK_FALSE(model_profile(4, 1).valid(0.0, 0.0));
    CHECK(model_profile(4, 1).valid(0.5, 0.2));
    CHECK_FALSE(model_profile(-4, 1).valid(1.0, 0.5));
    CHECK_FALSE(model_profile(-4, 1).valid(1.2, 0.5));
    CHECK(model_profile(-4, 1).valid(0.9, 0.5));
  }
  SUBCASE("k = -4 uses the squared Randers form") {
    const double c = 2, t = 1.2, s = 0.5, q = c * c - t * t;
    const double f = t / q, fp = (c * c + t * t) / (q * q);
    const double g = (t * fp - f) / (2 * t), h = (t * fp + f) / (2 * t);
    CHECK(model_profile(-4, c).value(t, s) == doctest::Approx(std::pow(std::sqrt(f + g * s) + std::sqrt(h * s), 2)));
  }
  SUBCASE("errors") {
    CHECK(code_of([] { model_profile(2, 1); }) == ErrorCode::InvalidCurvatureTag);
    CHECK(code_of([] { model_profile(4, 0); }) == ErrorCode::InvalidCatalogEntry);
    CHECK(code_of([] { model_profile(0, -1); }) == ErrorCode::InvalidCatalogEntry);
  }
}

TEST_CASE("profile jets agree with an independent evaluation of phi") {
  for (const auto& [name, profile, phi] : catalog()) {
    CAPTURE(name);
    for (double t : {0.35, 0.9, 1.8})
      for (double q : {0.15, 0.5, 0.85}) {
        const double s = q * t;
        if (!profile.valid(t, s)) continue;
        const PhiJet j = profile.phi_jet(t, s);
        CHECK(j.phi == doctest::Approx(phi(t, s)).epsilon(1e-13));
        CHECK(j.phi_t == doctest::Approx(oracle::partial_t(phi, t, s)).epsilon(1e-8));
        CHECK(j.phi_s == doctest::Approx(oracle::partial_s(phi, t, s)).epsilon(1e-8));
      }
  }
}

TEST_CASE("jet self-consistency: each partial is a 4th-order difference of the slot below") {
  const double h = 1e-3;
  for (const auto& [name, profile, phi] : catalog()) {
    CAPTURE(name);
    for (double t : {0.5, 1.4})
      for (double q : {0.3, 0.7}) {
        const double s = q * t;
        const PhiJet j = profile.phi_jet(t, s);
        for (int i = 0; i <= 2; ++i)
          for (int k = 0; i + k <= 2; ++k) {
            const auto along_t = [&](double x) { return profile.phi_jet(x, s).partial(i, k); };
            const auto along_s = [&](double x) { return profile.phi_jet(t, x).partial(i, k); };
            const double dt = oracle::central4(along_t, t, h), ds = oracle::central4(along_s, s, h);
            const double scale_t = std::max(std::abs(j.partial(i + 1, k)), 1.0);
            const double scale_s = std::max(std::abs(j.partial(i, k + 1)), 1.0);
            CHECK(std::abs(j.partial(i + 1, k) - dt) / scale_t < 1e-6);
            CHECK(std::abs(j.partial(i, k + 1) - ds) / scale_s < 1e-6);
          }
      }
  }
}

TEST_CASE("descriptor JSON") {
  SUBCASE("round trip") {
    ProfileDescriptor d;
    d.family = ProfileFamily::Randers;
    d.f = SF::constant(1) + SF::rational(2, 0.5);
    d.g = SF::exponential(0.5, -1);
    d.h = SF::power(3, 1.5);
    const ProfileDescriptor back = descriptor_from_json(to_json(d));
    CHECK(to_json(back) == to_json(d));
    CHECK(make_profile(back).value(1.0, 0.4) == doctest::Approx(make_profile(d).value(1.0, 0.4)));
  }
  SUBCASE("models and wk-randers") {
    const auto m = descriptor_from_json(nlohmann::json::parse(R"({"family":"model","k":-4,"c":2})"));
    CHECK(m.family == ProfileFamily::Model);
    CHECK(m.k == -4);
    CHECK(m.c == 2.0);
    const auto w = descriptor_from_json(
        nlohmann::json::parse(R"({"family":"wk-randers","f":{"kind":"linear","c":1},"h_scale":1.1})"));
    CHECK(w.h_scale == 1.1);
    CHECK(to_string(w.family) == "wk-randers");
  }
  SUBCASE("field-level diagnostics") {
    auto message = [](const char* text) {
      try {
        descriptor_from_json(nlohmann::json::parse(text));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(message(R"({"family":"hermitian","f":{"kind":"cubic"}})").find("profile.f.kind") != std::string::npos);
    CHECK(message(R"({"family":"spherical"})").find("profile.family") != std::string::npos);
    CHECK(message(R"({"family":"hermitian"})").find("profile.f") != std::string::npos);
    CHECK(message(R"({"family":"hermitian","f":{"kind":"linear","c":"x"}})").find("profile.f.c") != std::string::npos);
  }
}
