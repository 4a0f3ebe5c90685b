#include "tvk/mms.hpp"

#include <cmath>
#include <future>
#include <random>

namespace tvk {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 6th-order central stencils
constexpr double kD1[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
constexpr double kD2[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};

struct CaseForms {
  SpaceTimeFn u, ut, utt, ux, uxx, uxt, uxxt;
  SpaceTimeFn th, tht, thx, thxx;
  SpaceTimeFn a, ax;
  ScalarFn gamma, gamma_p, f, f_p;
  double D = 1.0;
};

void self_check(const CaseForms& cf, const MmsCase& mc) {
  const double h = 0.01;
  std::mt19937_64 rng(20240817u);
  std::uniform_real_distribution<double> ux01(0.1, 0.9);
  std::uniform_real_distribution<double> ut01(0.05, 0.45);

  for (int trial = 0; trial < 20; ++trial) {
    const double x = ux01(rng), t = ut01(rng);

    auto d2t = [&](const SpaceTimeFn& fn) {
      double s = 0.0;
      for (int j = 0; j < 7; ++j) s += kD2[j] * fn(x, t + (j - 3) * h);
      return s / (h * h);
    };
    auto d1x_of = [&](auto&& fn) {
      double s = 0.0;
      for (int i = 0; i < 7; ++i) s += kD1[i] * fn(x + (i - 3) * h);
      return s / h;
    };
    auto d2x_of = [&](auto&& fn) {
      double s = 0.0;
      for (int i = 0; i < 7; ++i) s += kD2[i] * fn(x + (i - 3) * h);
      return s / (h * h);
    };
    auto dxt = [&](const SpaceTimeFn& fn) {
      double s = 0.0;
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
          s += kD1[i] * kD1[j] * fn(x + (i - 3) * h, t + (j - 3) * h);
      return s / (h * h);
    };
    auto dxxt = [&](const SpaceTimeFn& fn) {
      double s = 0.0;
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
          s += kD2[i] * kD1[j] * fn(x + (i - 3) * h, t + (j - 3) * h);
      return s / (h * h * h);
    };

    const double utt = d2t(cf.u);
    const double ux = d1x_of([&](double xx) { return cf.u(xx, t); });
    const double uxx = d2x_of([&](double xx) { return cf.u(xx, t); });
    const double uxt = dxt(cf.u);
    const double uxxt = dxxt(cf.u);
    const double tht = [&] {
      double s = 0.0;
      for (int j = 0; j < 7; ++j) s += kD1[j] * cf.th(x, t + (j - 3) * h);
      return s / h;
    }();
    const double thxx = d2x_of([&](double xx) { return cf.th(xx, t); });

    const double theta = cf.th(x, t);
    const double g = cf.gamma(theta);
    const double dgdx = d1x_of([&](double xx) { return cf.gamma(cf.th(xx, t)); });
    const double dfdx = d1x_of([&](double xx) { return cf.f(cf.th(xx, t)); });
    const double av = cf.a(x, t);
    const double dadx = d1x_of([&](double xx) { return cf.a(xx, t); });

    const double su_fd = utt - (dgdx * uxt + g * uxxt) - (dadx * ux + av * uxx) - dfdx;
    const double st_fd = tht - cf.D * thxx - g * uxt * uxt - cf.f(theta) * uxt;

    if (std::fabs(su_fd - mc.source_u(x, t)) > 1e-6 ||
        std::fabs(st_fd - mc.source_theta(x, t)) > 1e-6)
      throw Error("MMS source derivation error");
  }
}

MmsCase build_trig(bool variable_a) {
  CaseForms cf;
  auto w = [](double x, double t) { return std::cos(kPi * x) * std::exp(-t); };
  auto wx = [](double x, double t) { return -kPi * std::sin(kPi * x) * std::exp(-t); };

  cf.u = w;
  cf.ut = [w](double x, double t) { return -w(x, t); };
  cf.utt = w;
  cf.ux = wx;
  cf.uxx = [w](double x, double t) { return -kPi * kPi * w(x, t); };
  cf.uxt = [wx](double x, double t) { return -wx(x, t); };
  cf.uxxt = [w](double x, double t) { return kPi * kPi * w(x, t); };
  cf.th = [w](double x, double t) { return 2.0 + w(x, t); };
  cf.tht = [w](double x, double t) { return -w(x, t); };
  cf.thx = wx;
  cf.thxx = [w](double x, double t) { return -kPi * kPi * w(x, t); };
  if (variable_a) {
    cf.a = [](double x, double t) { return 2.0 + std::sin(kPi * x) * std::exp(-t); };
    cf.ax = [](double x, double t) { return kPi * std::cos(kPi * x) * std::exp(-t); };
  } else {
    cf.a = [](double, double) { return 1.0; };
    cf.ax = [](double, double) { return 0.0; };
  }
  cf.gamma = [](double z) { return 1.0 - 0.5 / (1.0 + z); };
  cf.gamma_p = [](double z) { return 0.5 / ((1.0 + z) * (1.0 + z)); };
  cf.f = [](double z) { return 2.0 * (std::sqrt(1.0 + z) - 1.0); };
  cf.f_p = [](double z) { return 1.0 / std::sqrt(1.0 + z); };
  cf.D = 1.0;

  MmsCase mc;
  mc.id = variable_a ? "trig-variable-a" : "trig-constant-coeff";
  mc.coeffs.gamma = cf.gamma;
  mc.coeffs.a = cf.a;
  mc.coeffs.f = cf.f;
  mc.coeffs.c_gamma = 0.49;
  mc.coeffs.C_gamma = 1.01;
  mc.coeffs.C_f = 2.0;
  mc.coeffs.alpha = 0.5;
  mc.coeffs.D = cf.D;
  mc.u_exact = cf.u;
  mc.v_exact = cf.ut;
  mc.theta_exact = cf.th;
  mc.source_u = [cf](double x, double t) {
    const double theta = cf.th(x, t);
    const double visc = cf.gamma_p(theta) * cf.thx(x, t) * cf.uxt(x, t) +
                        cf.gamma(theta) * cf.uxxt(x, t);
    const double elast = cf.ax(x, t) * cf.ux(x, t) + cf.a(x, t) * cf.uxx(x, t);
    return cf.utt(x, t) - visc - elast - cf.f_p(theta) * cf.thx(x, t);
  };
  mc.source_theta = [cf](double x, double t) {
    const double theta = cf.th(x, t);
    const double uxt = cf.uxt(x, t);
    return cf.tht(x, t) - cf.D * cf.thxx(x, t) - cf.gamma(theta) * uxt * uxt -
           cf.f(theta) * uxt;
  };

  self_check(cf, mc);
  return mc;
}

MmsCase build_zero() {
  MmsCase mc;
  mc.id = "degenerate-zero";
  mc.coeffs.gamma = [](double z) { return 1.0 - 0.5 / (1.0 + z); };
  mc.coeffs.a = [](double, double) { return 1.0; };
  mc.coeffs.f = [](double z) { return 2.0 * (std::sqrt(1.0 + z) - 1.0); };
  mc.coeffs.c_gamma = 0.49;
  mc.coeffs.C_gamma = 1.01;
  mc.coeffs.C_f = 2.0;
  mc.coeffs.alpha = 0.5;
  mc.coeffs.D = 1.0;
  mc.u_exact = [](double, double) { return 0.0; };
  mc.v_exact = [](double, double) { return 0.0; };
  mc.theta_exact = [](double, double) { return 2.0; };
  mc.source_u = [](double, double) { return 0.0; };
  // theta constant at 2 with f(2) != 0 only matters when u_xt != 0
  mc.source_theta = [](double, double) { return 0.0; };
  return mc;
}

struct RunErrors {
  double err_u = 0.0, err_v = 0.0, err_theta = 0.0;
};

RunErrors run_case(const MmsCase& c, int n, double dt, double T) {
  SimConfig cfg;
  cfg.n = n;
  cfg.coeffs = c.coeffs;
  cfg.init.u0 = [&c](double x) { return c.u_exact(x, 0.0); };
  cfg.init.u0t = [&c](double x) { return c.v_exact(x, 0.0); };
  cfg.init.theta0 = [&c](double x) { return c.theta_exact(x, 0.0); };
  cfg.T = T;
  cfg.dt = dt;
  cfg.sample_stride = cfg.total_steps();  // endpoints only
  cfg.source_u = c.source_u;
  cfg.source_theta = c.source_theta;
  const Trajectory traj = run(cfg);
  const State& s = traj.samples.back();
  const Grid1D& g = traj.grid;

  Field eu(g.n), ev(g.n), et(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.center(i);
    eu[i] = s.u[i] - c.u_exact(x, s.t);
    ev[i] = s.v[i] - c.v_exact(x, s.t);
    et[i] = s.theta[i] - c.theta_exact(x, s.t);
  }
  RunErrors e;
  e.err_u = lp_norm(g, eu, 2.0);
  e.err_v = lp_norm(g, ev, 2.0);
  e.err_theta = lp_norm(g, et, 2.0);
  return e;
}

void fill_orders(ConvergenceStudy& study) {
  const double tiny = 1e-12;
  study.exact = true;
  for (const auto& r : study.rows)
    if (r.err_u > tiny || r.err_v > tiny || r.err_theta > tiny) study.exact = false;
  for (size_t i = 1; i < study.rows.size(); ++i) {
    auto& r = study.rows[i];
    const auto& p = study.rows[i - 1];
    if (!study.exact) {
      r.order_u = std::log2(p.err_u / r.err_u);
      r.order_v = std::log2(p.err_v / r.err_v);
      r.order_theta = std::log2(p.err_theta / r.err_theta);
      if (r.err_u >= p.err_u || r.err_v >= p.err_v || r.err_theta >= p.err_theta)
        study.converging = false;
    }
  }
}

}  // namespace

MmsCase make_mms_case(const std::string& id) {
  if (id == "trig-constant-coeff") return build_trig(false);
  if (id == "trig-variable-a") return build_trig(true);
  if (id == "degenerate-zero") return build_zero();
  throw Error("unknown MMS case: " + id);
}

ConvergenceStudy convergence_study(const MmsCase& c, const std::vector<int>& resolutions,
                                   double T) {
  if (resolutions.size() < 3) throw Error("convergence study needs >= 3 resolutions");
  for (size_t i = 1; i < resolutions.size(); ++i)
    if (resolutions[i] != 2 * resolutions[i - 1])
      throw Error("convergence study resolutions must double");

  std::vector<std::future<RunErrors>> futs;
  std::vector<double> dts;
  for (int n : resolutions) {
    const double dx = 1.0 / n;
    const double dt = 0.25 * dx * dx;
    dts.push_back(dt);
    futs.push_back(std::async(std::launch::async, run_case, std::cref(c), n, dt, T));
  }
  ConvergenceStudy study;
  for (size_t i = 0; i < resolutions.size(); ++i) {
    const RunErrors e = futs[i].get();
    ConvergenceRow row;
    row.n = resolutions[i];
    row.dt = dts[i];
    row.err_u = e.err_u;
    row.err_v = e.err_v;
    row.err_theta = e.err_theta;
    study.rows.push_back(row);
  }
  fill_orders(study);
  return study;
}

ConvergenceStudy temporal_study(const MmsCase& c, int n, const std::vector<double>& dts,
                                double T) {
  if (dts.size() < 2) throw Error("temporal study needs >= 2 time steps");
  std::vector<std::future<RunErrors>> futs;
  for (double dt : dts)
    futs.push_back(std::async(std::launch::async, run_case, std::cref(c), n, dt, T));
  ConvergenceStudy study;
  for (size_t i = 0; i < dts.size(); ++i) {
    const RunErrors e = futs[i].get();
    ConvergenceRow row;
    row.n = n;
    row.dt = dts[i];
    row.err_u = e.err_u;
    row.err_v = e.err_v;
    row.err_theta = e.err_theta;
    study.rows.push_back(row);
  }
  fill_orders(study);
  return study;
}

}  // namespace tvk
