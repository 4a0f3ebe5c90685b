#include <cmath>

#include "doctest.h"
#include "tvk/config.hpp"
#include "tvk/solver.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

tvk::SimConfig small_standard(int n, double T) {
  tvk::SimConfig cfg = tvk::scenarios::standard();
  cfg.n = n;
  cfg.T = T;
  cfg.dt = 0.0;
  // smoother temperature profile so the boundary-trace tolerance (10*dx^2)
  // is met at the coarse resolutions these tests use
  cfg.init.theta0 = [](double x) { return 2.0 + std::cos(kPi * x); };
  return cfg;
}

// forward-Euler reference integrator for the same semi-discrete system
tvk::State explicit_substeps(const tvk::Grid1D& g, tvk::State s, double h, int steps,
                             const tvk::CoefficientSet& c) {
  for (int k = 0; k < steps; ++k) {
    const int n = g.n;
    tvk::Field gamma_cell(n), f_cell(n), a_cell(n);
    for (int i = 0; i < n; ++i) {
      gamma_cell[i] = c.gamma(s.theta[i]);
      f_cell[i] = c.f(s.theta[i]);
      a_cell[i] = c.a(g.center(i), s.t);
    }
    const tvk::Field visc = tvk::div_flux(g, tvk::face_average(g, gamma_cell), s.v);
    const tvk::Field elast = tvk::div_flux(g, tvk::face_average(g, a_cell), s.u);
    const tvk::Field gf = tvk::gradient(g, f_cell);
    const tvk::Field lap = tvk::second_derivative(g, s.theta);
    const tvk::Field vx = tvk::gradient(g, s.v);
    tvk::State out = s;
    out.t = s.t + h;
    for (int i = 0; i < n; ++i) {
      out.v[i] = s.v[i] + h * (visc[i] + elast[i] + gf[i]);
      out.u[i] = s.u[i] + h * s.v[i];
      out.theta[i] = s.theta[i] +
                     h * (c.D * lap[i] + gamma_cell[i] * vx[i] * vx[i] +
                          f_cell[i] * vx[i]);
    }
    s = std::move(out);
  }
  return s;
}

}  // namespace

TEST_CASE("implicit step satisfies its defining equations") {
  const tvk::SimConfig cfg = small_standard(64, 1.0);
  const tvk::Grid1D g = tvk::Grid1D::make(cfg.x_left, cfg.x_right, cfg.n);
  const tvk::State s0 = tvk::build_initial_data(cfg.init, g);
  const double dt = 1e-3;
  const tvk::State s1 = tvk::step_imex(g, s0, dt, cfg.coeffs);

  CHECK(s1.t == doctest::Approx(dt));
  // displacement is updated with the new velocity
  for (int i = 0; i < g.n; ++i)
    CHECK(s1.u[i] == doctest::Approx(s0.u[i] + dt * s1.v[i]).epsilon(1e-14));

  // (I - dt*div(gamma grad)) v_new equals the explicit right-hand side
  tvk::Field gamma_cell(g.n), f_cell(g.n), a_cell(g.n);
  for (int i = 0; i < g.n; ++i) {
    gamma_cell[i] = cfg.coeffs.gamma(s0.theta[i]);
    f_cell[i] = cfg.coeffs.f(s0.theta[i]);
    a_cell[i] = cfg.coeffs.a(g.center(i), dt);
  }
  const tvk::Field visc = tvk::div_flux(g, tvk::face_average(g, gamma_cell), s1.v);
  const tvk::Field elast = tvk::div_flux(g, tvk::face_average(g, a_cell), s0.u);
  const tvk::Field gf = tvk::gradient(g, f_cell);
  for (int i = 0; i < g.n; ++i) {
    const double lhs = s1.v[i] - dt * visc[i];
    const double rhs = s0.v[i] + dt * (elast[i] + gf[i]);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("one implicit step matches a fine explicit reference") {
  const tvk::SimConfig cfg = small_standard(32, 1.0);
  const tvk::Grid1D g = tvk::Grid1D::make(cfg.x_left, cfg.x_right, cfg.n);
  const tvk::State s0 = tvk::build_initial_data(cfg.init, g);

  const double dt = 5e-4;
  const tvk::State imex = tvk::step_imex(g, s0, dt, cfg.coeffs);
  const tvk::State ref = explicit_substeps(g, s0, dt / 10000.0, 10000, cfg.coeffs);

  double scale = 0.0;
  for (int i = 0; i < g.n; ++i)
    scale = std::max({scale, std::fabs(ref.u[i]), std::fabs(ref.v[i]),
                      std::fabs(ref.theta[i])});
  for (int i = 0; i < g.n; ++i) {
    CHECK(std::fabs(imex.u[i] - ref.u[i]) < 1e-4 * scale);
    CHECK(std::fabs(imex.v[i] - ref.v[i]) < 1e-4 * scale);
    CHECK(std::fabs(imex.theta[i] - ref.theta[i]) < 1e-4 * scale);
  }
}

TEST_CASE("momentum is conserved without coupling") {
  tvk::SimConfig cfg = tvk::scenarios::decoupled();
  cfg.n = 64;
  cfg.T = 0.5;
  cfg.init.u0t = [](double x) { return 0.5 + std::cos(kPi * x); };
  cfg.sample_stride = 1;
  const tvk::Trajectory traj = tvk::run(cfg);
  const double m0 = tvk::integrate(traj.grid, traj.samples.front().v);
  CHECK(m0 == doctest::Approx(0.5).epsilon(1e-12));
  for (const tvk::State& s : traj.samples)
    CHECK(std::fabs(tvk::integrate(traj.grid, s.v) - m0) < 1e-11);
}

TEST_CASE("deterministic trajectories") {
  const tvk::SimConfig cfg = small_standard(32, 0.05);
  const tvk::Trajectory a = tvk::run(cfg);
  const tvk::Trajectory b = tvk::run(cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t k = 0; k < a.samples.size(); ++k)
    for (int i = 0; i < a.grid.n; ++i) {
      CHECK(a.samples[k].u[i] == b.samples[k].u[i]);
      CHECK(a.samples[k].v[i] == b.samples[k].v[i]);
      CHECK(a.samples[k].theta[i] == b.samples[k].theta[i]);
    }
}

TEST_CASE("blow-up monitor analytic values") {
  const tvk::Grid1D g = tvk::Grid1D::make(0.0, 1.0, 256);
  tvk::State s;
  s.u.assign(g.n, 0.0);
  s.v.assign(g.n, 0.0);
  s.theta.assign(g.n, 0.0);
  CHECK(tvk::blowup_indicator(g, s) == 0.0);

  s.theta.assign(g.n, 3.0);
  CHECK(tvk::blowup_indicator(g, s) == doctest::Approx(3.0).epsilon(1e-12));

  s.theta = tvk::sample(g, [](double x) { return std::cos(kPi * x); });
  const double expected = std::sqrt(0.5 + kPi * kPi / 2.0);
  CHECK(tvk::blowup_indicator(g, s) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("an artificially low threshold stops the run") {
  tvk::SimConfig cfg = small_standard(64, 1.0);
  cfg.blowup_threshold = 1e-3;
  const tvk::Trajectory traj = tvk::run(cfg);
  CHECK(traj.termination == tvk::Termination::Diverged);
  CHECK(traj.t_est > 0.0);
  CHECK(traj.samples.back().diverged);
}

TEST_CASE("configuration defaults and validation") {
  tvk::SimConfig cfg = small_standard(128, 1.0);
  CHECK(cfg.resolved_dt() == doctest::Approx(0.25 / 128));
  CHECK(cfg.resolved_sample_stride() >= 1);
  CHECK(cfg.resolved_snapshot_stride() >= 1);

  cfg.n = 4;
  CHECK_THROWS_AS(cfg.validate(), tvk::Error);
  cfg.n = 128;
  cfg.T = -1.0;
  CHECK_THROWS_AS(cfg.validate(), tvk::Error);
  cfg.T = 1.0;
  cfg.checks.p = 1.5;
  CHECK_THROWS_AS(cfg.validate(), tvk::Error);
}

TEST_CASE("trajectory bookkeeping") {
  tvk::SimConfig cfg = small_standard(32, 0.1);
  cfg.sample_stride = 7;
  const tvk::Trajectory traj = tvk::run(cfg);
  CHECK(traj.termination == tvk::Termination::Completed);
  CHECK(traj.samples.front().t == 0.0);
  // the horizon is met to within one (fixed) time step
  CHECK(std::fabs(traj.samples.back().t - 0.1) <= traj.dt);
  for (size_t k = 1; k < traj.samples.size(); ++k)
    CHECK(traj.samples[k].t > traj.samples[k - 1].t);
}
