#include <cmath>

#include "doctest.h"
#include "tvk/config.hpp"

TEST_CASE("monotone cubic interpolation") {
  // monotone data stays monotone and interpolates the nodes
  tvk::MonotoneCubic m({0.0, 1.0, 2.0, 4.0}, {0.0, 1.0, 1.5, 1.6});
  CHECK(m(0.0) == doctest::Approx(0.0));
  CHECK(m(1.0) == doctest::Approx(1.0));
  CHECK(m(4.0) == doctest::Approx(1.6));
  double prev = m(0.0);
  for (int i = 1; i <= 400; ++i) {
    const double v = m(4.0 * i / 400.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  // flat extrapolation beyond the table
  CHECK(m(-3.0) == doctest::Approx(0.0));
  CHECK(m(9.0) == doctest::Approx(1.6));

  CHECK_THROWS_WITH(tvk::MonotoneCubic({0.0}, {1.0}), "table needs >= 2 points");
  CHECK_THROWS_WITH(tvk::MonotoneCubic({0.0, 0.0}, {1.0, 2.0}),
                    "table abscissae must increase");
}

TEST_CASE("minimal scenario config") {
  const tvk::SimConfig cfg = tvk::parse_config_text(
      "[run]\nscenario = standard\n[grid]\nn = 128\n");
  CHECK(cfg.n == 128);
  CHECK(cfg.T == doctest::Approx(5.0));
  CHECK(cfg.checks.p == doctest::Approx(0.5));
  CHECK(cfg.checks.q == doctest::Approx(3.0));
  CHECK(cfg.checks.r == doctest::Approx(2.0));
  CHECK(cfg.checks.K == 6);
  CHECK(cfg.blowup_threshold == doctest::Approx(1e6));
  CHECK_FALSE(cfg.coeffs.outside_theorem);
}

TEST_CASE("config error reporting") {
  CHECK_THROWS_WITH(tvk::parse_config_text("[grid]\nn = 4\n"), "n below minimum 8");
  CHECK_THROWS_WITH(tvk::parse_config_text("[grid]\nm = 12\n"),
                    "unknown key 'grid.m'");
  CHECK_THROWS_AS(tvk::parse_config_text("[grid]\nn = twelve\n"), tvk::Error);
  CHECK_THROWS_AS(tvk::parse_config_text("[nope]\nx = 1\n"), tvk::Error);
  CHECK_THROWS_AS(tvk::parse_config_text("n = 12\n"), tvk::Error);
  CHECK_THROWS_AS(tvk::parse_config_text("[run]\nscenario = unknown\n"), tvk::Error);
  CHECK_THROWS_AS(tvk::parse_config("/no/such/file.cfg"), tvk::Error);
}

TEST_CASE("superlinear growth exponent is flagged, not rejected") {
  const tvk::SimConfig cfg = tvk::parse_config_text(
      "[run]\nscenario = standard\n[coefficients]\nalpha = 0.9\n");
  CHECK(cfg.coeffs.outside_theorem);
  CHECK(cfg.coeffs.violated_hypothesis == "hyp-alpha");
}

TEST_CASE("overrides win over file keys") {
  const tvk::SimConfig cfg = tvk::parse_config_text(
      "[run]\nscenario = standard\nT = 2\n", {"run.T=0.25", "grid.n=512"});
  CHECK(cfg.T == doctest::Approx(0.25));
  CHECK(cfg.n == 512);
  CHECK_THROWS_AS(tvk::parse_config_text("[grid]\nn = 64\n", {"bogus"}), tvk::Error);
  CHECK_THROWS_AS(tvk::parse_config_text("[grid]\nn = 64\n", {"grid.zzz=1"}),
                  tvk::Error);
}

TEST_CASE("explicit coefficient and profile keys") {
  const std::string text =
      "[grid]\n"
      "n = 64\n"
      "[coefficients]\n"
      "gamma = constant\n"
      "gamma_value = 0.8\n"
      "a = constant\n"
      "a_value = 1.5\n"
      "f = zero\n"
      "c_gamma = 0.7\n"
      "C_gamma = 1.1\n"
      "alpha = 0.5\n"
      "[initial]\n"
      "u0 = cosine\n"
      "u0_amp = 0.5\n"
      "v0 = zero\n"
      "theta0 = constant\n"
      "theta0_value = 1.0\n"
      "[run]\n"
      "T = 0.5\n";
  const tvk::SimConfig cfg = tvk::parse_config_text(text);
  CHECK(cfg.coeffs.gamma(12.0) == doctest::Approx(0.8));
  CHECK(cfg.coeffs.a(0.3, 7.0) == doctest::Approx(1.5));
  CHECK(cfg.coeffs.f(4.0) == 0.0);
  CHECK(cfg.init.u0(0.0) == doctest::Approx(0.5));
  CHECK(cfg.init.theta0(0.4) == doctest::Approx(1.0));
  CHECK(cfg.T == doctest::Approx(0.5));
}

TEST_CASE("tabulated coefficients parse") {
  const tvk::SimConfig cfg = tvk::parse_config_text(
      "[grid]\nn = 64\n[coefficients]\nf = table\nf_table = 0:0; 1:0.5; 10:1\n");
  CHECK(cfg.coeffs.f(0.0) == doctest::Approx(0.0));
  CHECK(cfg.coeffs.f(1.0) == doctest::Approx(0.5));
  CHECK(cfg.coeffs.f(100.0) == doctest::Approx(1.0));  // flat extrapolation
  CHECK_THROWS_AS(
      tvk::parse_config_text("[coefficients]\nf = table\nf_table = 0-0\n"),
      tvk::Error);
  CHECK_THROWS_AS(tvk::parse_config_text("[coefficients]\nf = table\n"), tvk::Error);
}

TEST_CASE("shipped scenarios are coherent") {
  for (const auto& cfg :
       {tvk::scenarios::standard(), tvk::scenarios::standard_static_a(),
        tvk::scenarios::decoupled()}) {
    CHECK_NOTHROW(cfg.validate());
    CHECK(tvk::validate_coefficients(cfg.coeffs).pass());
  }
  const tvk::SimConfig probe = tvk::scenarios::alpha09();
  CHECK_NOTHROW(probe.validate());
  CHECK(probe.coeffs.outside_theorem);
}
