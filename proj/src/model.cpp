#include "tvk/model.hpp"

#include <cmath>
#include <sstream>

namespace tvk {

bool ValidationReport::pass() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const HypothesisCheck* ValidationReport::find(const std::string& tag) const {
  for (const auto& c : checks)
    if (c.tag == tag) return &c;
  return nullptr;
}

namespace {

double eval_or_throw(const ScalarFn& fn, double zeta, const char* name) {
  const double v = fn(zeta);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "coefficient evaluation failure: " << name << " at zeta=" << zeta;
    throw Error(os.str());
  }
  return v;
}

// central second difference with step h = 1e-4*(1+zeta)
double second_diff(const ScalarFn& fn, double zeta, const char* name) {
  const double h = 1e-4 * (1.0 + zeta);
  const double lo = std::max(zeta - h, 0.0);
  const double f0 = eval_or_throw(fn, lo, name);
  const double f1 = eval_or_throw(fn, lo + h, name);
  const double f2 = eval_or_throw(fn, lo + 2.0 * h, name);
  return (f0 - 2.0 * f1 + f2) / (h * h);
}

double first_diff(const ScalarFn& fn, double zeta, const char* name) {
  const double h = 1e-4 * (1.0 + zeta);
  const double lo = std::max(zeta - h, 0.0);
  const double f0 = eval_or_throw(fn, lo, name);
  const double f2 = eval_or_throw(fn, lo + 2.0 * h, name);
  return (f2 - f0) / (2.0 * h);
}

struct Worst {
  bool violated = false;
  double zeta = 0.0;
  double value = 0.0;
  double magnitude = 0.0;

  void offer(double z, double v, double mag) {
    if (!violated || mag > magnitude) {
      violated = true;
      zeta = z;
      value = v;
      magnitude = mag;
    }
  }
};

}  // namespace

ValidationReport validate_coefficients(const CoefficientSet& coeffs,
                                       const SampleLattice& lattice) {
  if (lattice.count < 100) throw Error("validation lattice needs >= 100 points");
  if (lattice.zeta_max < 100.0) throw Error("validation lattice needs zeta_max >= 100");

  ValidationReport rep;
  const double fd_tol = 1e-6;

  {
    HypothesisCheck c;
    c.tag = "ConstantsOrder";
    c.passed = coeffs.c_gamma < 1.0 && 1.0 < coeffs.C_gamma && coeffs.C_f > 1.0;
    c.detail = "c_gamma < 1 < C_gamma and C_f > 1";
    rep.checks.push_back(c);
  }
  {
    HypothesisCheck c;
    c.tag = "hyp-alpha";
    c.passed = coeffs.alpha > 0.0 && coeffs.alpha < 5.0 / 6.0;
    c.worst_value = coeffs.alpha;
    c.detail = "0 < alpha < 5/6";
    rep.checks.push_back(c);
  }
  {
    HypothesisCheck c;
    c.tag = "hyp-gamma";
    Worst w;
    for (int i = 0; i < lattice.count; ++i) {
      const double z = lattice.zeta_max * i / (lattice.count - 1);
      const double gv = eval_or_throw(coeffs.gamma, z, "gamma");
      if (!(gv > coeffs.c_gamma) || !(gv < coeffs.C_gamma))
        w.offer(z, gv, std::max(coeffs.c_gamma - gv, gv - coeffs.C_gamma));
      const double g2 = second_diff(coeffs.gamma, z, "gamma");
      if (g2 > fd_tol) w.offer(z, g2, g2);
    }
    c.passed = !w.violated;
    c.worst_zeta = w.zeta;
    c.worst_value = w.value;
    c.detail = "c_gamma < gamma < C_gamma, gamma'' <= 0";
    rep.checks.push_back(c);
  }
  {
    HypothesisCheck c;
    c.tag = "hyp-f";
    Worst w;
    const double f0 = eval_or_throw(coeffs.f, 0.0, "f");
    if (std::fabs(f0) > 1e-12) w.offer(0.0, f0, std::fabs(f0));
    for (int i = 0; i < lattice.count; ++i) {
      const double z = lattice.zeta_max * i / (lattice.count - 1);
      const double fv = eval_or_throw(coeffs.f, z, "f");
      const double bound = coeffs.C_f * std::pow(1.0 + z, coeffs.alpha);
      if (std::fabs(fv) > bound + 1e-9) w.offer(z, fv, std::fabs(fv) - bound);
      const double fp = first_diff(coeffs.f, z, "f");
      if (std::fabs(fp) > coeffs.C_f + fd_tol) w.offer(z, fp, std::fabs(fp) - coeffs.C_f);
    }
    c.passed = !w.violated;
    c.worst_zeta = w.zeta;
    c.worst_value = w.value;
    c.detail = "f(0)=0, |f'| <= C_f, |f| <= C_f(1+zeta)^alpha";
    rep.checks.push_back(c);
  }
  {
    HypothesisCheck c;
    c.tag = "hyp-a";
    Worst w;
    const int nx = 21, nt = 21;
    const double hx = (lattice.x_right - lattice.x_left) / 200.0;
    const double ht = lattice.t_max / 200.0;
    for (int i = 0; i < nx; ++i) {
      const double x = lattice.x_left + (lattice.x_right - lattice.x_left) * i / (nx - 1);
      for (int j = 0; j < nt; ++j) {
        const double t = lattice.t_max * j / (nt - 1);
        const double av = coeffs.a(x, t);
        if (!std::isfinite(av)) {
          std::ostringstream os;
          os << "coefficient evaluation failure: a at x=" << x << ", t=" << t;
          throw Error(os.str());
        }
        if (!(av > 0.0)) w.offer(x, av, -av);
        // smoothness probe: finite-difference derivatives must stay finite
        const double ax = (coeffs.a(x + hx, t) - coeffs.a(x - hx, t)) / (2.0 * hx);
        const double at = (coeffs.a(x, t + ht) - coeffs.a(x, std::max(t - ht, 0.0))) / (2.0 * ht);
        const double axx = (coeffs.a(x + hx, t) - 2.0 * av + coeffs.a(x - hx, t)) / (hx * hx);
        if (!std::isfinite(ax) || !std::isfinite(at) || !std::isfinite(axx))
          w.offer(x, av, 1.0);
      }
    }
    c.passed = !w.violated;
    c.worst_zeta = w.zeta;
    c.worst_value = w.value;
    c.detail = "a positive and C^2 (sampled)";
    rep.checks.push_back(c);
  }
  return rep;
}

CoefficientSet piezo_to_coefficients(const PiezoParams& p) {
  if (!(p.rho > 0.0) || !(p.d > 0.0) || !(p.C_elastic > 0.0) || !(p.B >= 0.0) ||
      !(p.e >= 0.0) || !(p.eps > 0.0))
    throw Error("invalid physical parameter");

  const double gamma_val = p.d / p.rho;
  const double a_val = p.C_elastic / p.rho + p.e * p.e / (p.eps * p.rho);
  const double f_slope = p.C_elastic * p.B / p.rho;

  CoefficientSet c;
  c.gamma = [gamma_val](double) { return gamma_val; };
  c.a = [a_val](double, double) { return a_val; };
  c.f = [f_slope](double zeta) { return f_slope * zeta; };
  c.c_gamma = gamma_val - 1e-6;
  c.C_gamma = gamma_val + 1e-6;
  c.alpha = 1.0;  // linear coupling
  c.C_f = f_slope + 1.0;
  c.D = 1.0;
  // alpha = 1 is outside the admissible growth range
  c.outside_theorem = true;
  c.violated_hypothesis = "hyp-alpha";
  return c;
}

State build_initial_data(const InitialData& init, const Grid1D& grid) {
  State s;
  s.t = 0.0;
  s.u = sample(grid, init.u0);
  s.v = sample(grid, init.u0t);
  s.theta = sample(grid, init.theta0);
  if (!all_finite(s.u) || !all_finite(s.v) || !all_finite(s.theta))
    throw Error("initial data not finite on grid");

  for (int i = 0; i < grid.n; ++i)
    if (s.theta[i] < 0.0) throw Error("initial temperature negative");

  // one-sided quadratic derivative extrapolation to the endpoint
  const auto trace = [&](const Field& phi, bool left) {
    const int n = grid.n;
    const double p0 = left ? phi[0] : phi[n - 1];
    const double p1 = left ? phi[1] : phi[n - 2];
    const double p2 = left ? phi[2] : phi[n - 3];
    const double d = (-2.0 * p0 + 3.0 * p1 - p2) / grid.dx;
    return left ? d : -d;
  };
  const double tol = 10.0 * grid.dx * grid.dx;
  for (const Field* phi : {&s.u, &s.v, &s.theta}) {
    if (std::fabs(trace(*phi, true)) > tol || std::fabs(trace(*phi, false)) > tol)
      throw Error("incompatible initial data");
  }
  return s;
}

}  // namespace tvk
