#include "tvk/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace tvk {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double quarter_saturation_pass(const std::vector<double>& t,
                               const std::vector<double>& increments) {
  // last-quarter increment <= 10x first-quarter increment (plus slack)
  if (t.size() < 4) return true;
  const double t0 = t.front(), t1 = t.back();
  const double q = (t1 - t0) / 4.0;
  double first = 0.0, last = 0.0;
  for (size_t i = 1; i < t.size(); ++i) {
    if (t[i] <= t0 + q) first += increments[i];
    if (t[i] > t1 - q) last += increments[i];
  }
  return last <= 10.0 * first + 1e-12;
}
}  // namespace

double mechanical_energy(const Grid1D& grid, const State& s, const CoefficientSet& coeffs) {
  const Field ux = gradient(grid, s.u);
  double kin = 0.0, ela = 0.0, th = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    kin += s.v[i] * s.v[i];
    ela += coeffs.a(grid.center(i), s.t) * ux[i] * ux[i];
    th += s.theta[i];
  }
  return (0.5 * kin + 0.5 * ela + th) * grid.dx;
}

ResidualSeries energy_identity_residual(const Trajectory& traj) {
  const size_t m = traj.samples.size();
  if (m < 3) throw Error("insufficient samples");
  std::vector<double> y(m);
  for (size_t i = 0; i < m; ++i)
    y[i] = mechanical_energy(traj.grid, traj.samples[i], traj.coeffs);

  ResidualSeries out;
  const double dt = traj.dt;
  for (size_t i = 1; i + 1 < m; ++i) {
    const State& s = traj.samples[i];
    const double dydt = (y[i + 1] - y[i - 1]) / (traj.samples[i + 1].t - traj.samples[i - 1].t);
    const Field ux = gradient(traj.grid, s.u);
    double rhs = 0.0;
    for (int j = 0; j < traj.grid.n; ++j) {
      const double x = traj.grid.center(j);
      const double at =
          (traj.coeffs.a(x, s.t + dt) - traj.coeffs.a(x, std::max(s.t - dt, 0.0))) /
          (s.t + dt - std::max(s.t - dt, 0.0));
      rhs += at * ux[j] * ux[j];
    }
    rhs *= 0.5 * traj.grid.dx;
    // Boundary work of the thermal stress: with zero-slope (not zero-stress)
    // walls, f(theta) acts on a freely moving endpoint, so the identity reads
    // dy/dt = 1/2 int a_t u_x^2 + [u_t f(theta)] at the right wall minus the
    // left wall. Discrete summation by parts reproduces exactly this term with
    // the boundary-cell values (u_x = theta_x = 0 there makes them second-order
    // traces). Omitting it would charge the scheme with an O(1) model term.
    const int last = traj.grid.n - 1;
    rhs += s.v[last] * traj.coeffs.f(s.theta[last]) -
           s.v[0] * traj.coeffs.f(s.theta[0]);
    const double r = dydt - rhs;
    out.t.push_back(s.t);
    out.r.push_back(r);
    out.max_abs = std::max(out.max_abs, std::fabs(r));
  }
  return out;
}

GronwallResult gronwall_check(const Trajectory& traj) {
  GronwallResult res;
  const double dt = traj.dt;
  double sup_at = 0.0, sup_a = 0.0, sup_inva = 0.0;
  for (const State& s : traj.samples) {
    for (int j = 0; j < traj.grid.n; ++j) {
      const double x = traj.grid.center(j);
      const double a = traj.coeffs.a(x, s.t);
      const double at =
          (traj.coeffs.a(x, s.t + dt) - traj.coeffs.a(x, std::max(s.t - dt, 0.0))) /
          (s.t + dt - std::max(s.t - dt, 0.0));
      sup_a = std::max(sup_a, a);
      sup_inva = std::max(sup_inva, 1.0 / a);
      sup_at = std::max(sup_at, std::fabs(at));
    }
  }
  res.c1 = std::max({sup_at, sup_a, sup_inva});
  res.y0 = mechanical_energy(traj.grid, traj.samples.front(), traj.coeffs);
  res.pass = true;
  res.min_margin = std::numeric_limits<double>::infinity();
  for (const State& s : traj.samples) {
    const double y = mechanical_energy(traj.grid, s, traj.coeffs);
    const double bound = res.y0 * std::exp(res.c1 * res.c1 * s.t) * (1.0 + 1e-6);
    res.min_margin = std::min(res.min_margin, bound - y);
    if (y > bound) res.pass = false;
  }
  if (traj.samples.empty()) res.min_margin = 0.0;
  return res;
}

SeriesVerdict weighted_theta_dissipation(const Trajectory& traj, double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw Error("weighted dissipation needs p in (0,1)");
  SeriesVerdict out;
  std::vector<double> inc;
  double total = 0.0, prev_t = traj.samples.front().t;
  double prev_integrand = 0.0;
  bool first = true;
  for (const State& s : traj.samples) {
    const Field tx = gradient(traj.grid, s.theta);
    double integ = 0.0;
    for (int i = 0; i < traj.grid.n; ++i)
      integ += std::pow(s.theta[i] + 1.0, p - 2.0) * tx[i] * tx[i];
    integ *= traj.grid.dx;
    double add = first ? 0.0 : integ * (s.t - prev_t);
    total += add;
    out.t.push_back(s.t);
    out.series.push_back(total);
    inc.push_back(add);
    prev_t = s.t;
    prev_integrand = integ;
    first = false;
  }
  (void)prev_integrand;
  out.value = total;
  out.pass = std::isfinite(total) && quarter_saturation_pass(out.t, inc);
  return out;
}

SeriesVerdict theta_lq_time_integral(const Trajectory& traj, double q, double r) {
  if (!(q > 1.0) || !(r > 0.0)) throw Error("need q > 1 and r > 0");
  SeriesVerdict out;
  out.in_theorem = r < 2.0 * q / (q - 1.0);
  if (!out.in_theorem) out.note = "exponent pair outside admissible range";
  std::vector<double> inc;
  double total = 0.0, prev_t = traj.samples.front().t;
  bool first = true;
  for (const State& s : traj.samples) {
    Field shifted = s.theta;
    for (double& v : shifted) v += 1.0;
    const double val = std::pow(lp_norm(traj.grid, shifted, q), r);
    const double add = first ? 0.0 : val * (s.t - prev_t);
    total += add;
    out.t.push_back(s.t);
    out.series.push_back(total);
    inc.push_back(add);
    prev_t = s.t;
    first = false;
  }
  out.value = total;
  out.pass = std::isfinite(total) && quarter_saturation_pass(out.t, inc);
  return out;
}

SeriesVerdict sup_velocity_series(const Trajectory& traj) {
  SeriesVerdict out;
  double m = 0.0;
  for (const State& s : traj.samples) {
    const double sv = sup_norm(s.v);
    out.t.push_back(s.t);
    out.series.push_back(sv);
    m = std::max(m, sv);
  }
  out.value = m;
  out.pass = std::isfinite(m);
  out.note = "unverified-single-resolution";
  return out;
}

SeriesVerdict theta_h1_series(const Trajectory& traj) {
  SeriesVerdict out;
  for (const State& s : traj.samples) {
    const Field tx = gradient(traj.grid, s.theta);
    double v = 0.0;
    for (int i = 0; i < traj.grid.n; ++i) v += tx[i] * tx[i];
    out.t.push_back(s.t);
    out.series.push_back(v * traj.grid.dx);
  }
  out.value = *std::max_element(out.series.begin(), out.series.end());
  // exponential envelope fit c*exp(c10*t); c chosen so the bound holds,
  // pass iff both constants are finite
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < out.t.size(); ++i) {
    if (out.series[i] <= 0.0) continue;
    const double ly = std::log(out.series[i]);
    sx += out.t[i]; sy += ly; sxx += out.t[i] * out.t[i]; sxy += out.t[i] * ly;
    ++cnt;
  }
  double c10 = 0.0;
  if (cnt >= 2) {
    const double den = cnt * sxx - sx * sx;
    if (den > 0.0) c10 = (cnt * sxy - sx * sy) / den;
  }
  double c = 0.0;
  for (size_t i = 0; i < out.t.size(); ++i)
    c = std::max(c, out.series[i] * std::exp(-c10 * out.t[i]));
  out.pass = std::isfinite(out.value) && std::isfinite(c) && std::isfinite(c10);
  std::ostringstream os;
  os << "envelope c=" << c << " rate=" << c10;
  out.note = os.str();
  return out;
}

// ---------------------------------------------------------------------------

namespace {
// log of int |v|^p dx, scaled to stay representable; -inf for v == 0
double log_lp_power_integral(const Grid1D& g, const Field& v, double p) {
  const double m = sup_norm(v);
  if (m == 0.0) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::pow(std::fabs(x) / m, p);
  return p * std::log(m) + std::log(s * g.dx);
}
}  // namespace

MoserSequence moser_cascade(const Trajectory& traj, int K) {
  if (K < 2) throw Error("cascade depth must be >= 2");
  MoserSequence seq;
  seq.K = K;
  seq.log_M.assign(K, kNegInf);
  double sup_v = 0.0;
  for (const State& s : traj.samples) {
    sup_v = std::max(sup_v, sup_norm(s.v));
    for (int k = 1; k <= K; ++k) {
      const double lm = log_lp_power_integral(traj.grid, s.v, std::pow(2.0, k));
      seq.log_M[k - 1] = std::max(seq.log_M[k - 1], lm);
    }
  }
  seq.A = (1.0 + traj.grid.length()) * sup_v + 2.0;
  const double logA = std::log(seq.A);
  double logB = 0.0;
  for (int k = 2; k <= K; ++k) {
    const double lm = seq.log_M[k - 1];
    if (lm == kNegInf) continue;
    if (lm <= std::pow(2.0, k) * logA) continue;
    const double lprev = seq.log_M[k - 2];
    logB = std::max(logB, (lm - 2.0 * lprev) / k);
  }
  seq.B = std::exp(logB);
  seq.plateau =
      (seq.log_M[K - 1] == kNegInf) ? 0.0 : std::exp(seq.log_M[K - 1] / std::pow(2.0, K));
  return seq;
}

MoserCheck check_moser_recursion_log(double logA, double logB,
                                     const std::vector<double>& log_M) {
  if (log_M.size() < 2) throw Error("invalid sequence");
  MoserCheck res;
  const double tol = 1e-9;
  res.premise_holds = true;
  for (size_t k = 2; k <= log_M.size(); ++k) {
    const double bound = std::max(std::pow(2.0, double(k)) * logA,
                                  k * logB + 2.0 * log_M[k - 2]);
    if (log_M[k - 1] > bound + tol) res.premise_holds = false;
  }
  const double rhs = 2.0 * logB + std::max(logA, log_M[0]);
  res.conclusion_holds = true;
  for (size_t k = 1; k <= log_M.size(); ++k) {
    if (log_M[k - 1] / std::pow(2.0, double(k)) > rhs + tol)
      res.conclusion_holds = false;
  }
  return res;
}

MoserCheck check_moser_recursion(double A, double B, const std::vector<double>& M) {
  if (!(A >= 0.0) || !(B >= 1.0)) throw Error("need A >= 0 and B >= 1");
  std::vector<double> lm(M.size());
  for (size_t i = 0; i < M.size(); ++i) {
    if (!(M[i] > 0.0)) throw Error("invalid sequence");
    lm[i] = std::log(M[i]);
  }
  return check_moser_recursion_log(A == 0.0 ? kNegInf : std::log(A), std::log(B), lm);
}

long long moser_property_trial(long long trials, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> span(-50.0, 50.0);
  std::uniform_real_distribution<double> bdist(0.0, 10.0);
  std::uniform_real_distribution<double> slack(0.0, 20.0);
  std::uniform_int_distribution<int> klen(3, 8);

  long long violations = 0;
  for (long long t = 0; t < trials; ++t) {
    const double logA = (u01(rng) < 0.2) ? kNegInf : span(rng);
    const double logB = bdist(rng);
    const int K = klen(rng);
    std::vector<double> lm(K);
    lm[0] = span(rng);
    // the recursion property needs max{A, M_1} >= 1 (its applications fix
    // A >= 2); below that threshold genuine counterexamples exist
    if (logA < 0.0 && lm[0] < 0.0) lm[0] = -lm[0];
    for (int k = 2; k <= K; ++k) {
      const double bound = std::max(std::pow(2.0, double(k)) * logA,
                                    k * logB + 2.0 * lm[k - 2]);
      lm[k - 1] = bound - slack(rng);
    }
    const MoserCheck res = check_moser_recursion_log(logA, logB, lm);
    if (!res.premise_holds) throw Error("trial generator produced invalid premise");
    if (!res.conclusion_holds) ++violations;
  }
  return violations;
}

// ---------------------------------------------------------------------------

HoelderFit hoelder_fit_snapshots(const Grid1D& grid, const std::vector<State>& snaps,
                                 double snap_dt) {
  if (snaps.size() < 16 || grid.n < 64)
    throw Error("modulus fit needs >= 16 snapshots and n >= 64");
  HoelderFit fit;
  const int n = grid.n;

  double sup_v = 0.0;
  for (const State& s : snaps) sup_v = std::max(sup_v, sup_norm(s.v));

  // spatial structure function over dyadic lags
  std::vector<double> hs, S;
  for (int lag = 1; lag <= n / 2; lag *= 2) {
    double m = 0.0;
    for (const State& s : snaps)
      for (int i = 0; i + lag < n; ++i)
        m = std::max(m, std::fabs(s.v[i + lag] - s.v[i]));
    hs.push_back(lag * grid.dx);
    S.push_back(m);
  }
  fit.h = hs;
  fit.structure = S;

  double smax = *std::max_element(S.begin(), S.end());
  if (smax <= 1e-13 * (1.0 + sup_v)) {
    fit.constant_field = true;
    return fit;
  }

  // middle dyadic decade: drop the two smallest lags (discretization noise)
  // and the largest (saturation)
  size_t lo = 2, hi = hs.size() > 1 ? hs.size() - 1 : hs.size();
  if (hi <= lo + 2) { lo = hs.size() > 3 ? 1 : 0; hi = hs.size(); }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int cnt = 0;
  for (size_t j = lo; j < hi; ++j) {
    if (S[j] <= 0.0) continue;
    const double lx = std::log(hs[j]), ly = std::log(S[j]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly; syy += ly * ly;
    ++cnt;
  }
  double slope = 1.0;
  if (cnt >= 2) {
    const double den = cnt * sxx - sx * sx;
    if (den > 0.0) slope = (cnt * sxy - sx * sy) / den;
    const double vary = cnt * syy - sy * sy;
    if (vary > 0.0 && den > 0.0)
      fit.r2 = (cnt * sxy - sx * sy) * (cnt * sxy - sx * sy) / (den * vary);
    else
      fit.r2 = 1.0;
  }
  fit.beta_hat = std::clamp(slope, 1e-6, 1.0);

  // mu from the sampled dyadic pairs, temporal exponent tied to beta/2
  double mu = 0.0;
  for (size_t j = 0; j < hs.size(); ++j)
    if (S[j] > 0.0) mu = std::max(mu, S[j] / std::pow(hs[j], fit.beta_hat));
  for (size_t lag = 1; lag <= snaps.size() / 2; lag *= 2) {
    double m = 0.0;
    for (size_t k = 0; k + lag < snaps.size(); ++k)
      for (int i = 0; i < n; ++i)
        m = std::max(m, std::fabs(snaps[k + lag].v[i] - snaps[k].v[i]));
    const double tau = lag * snap_dt;
    if (m > 0.0 && tau > 0.0)
      mu = std::max(mu, m / std::pow(tau, fit.beta_hat / 2.0));
  }
  fit.mu_hat = mu;
  return fit;
}

HoelderFit hoelder_fit(const Trajectory& traj) {
  return hoelder_fit_snapshots(traj.grid, traj.samples, traj.sample_dt());
}

// ---------------------------------------------------------------------------

double ehrling_probe(const Grid1D& grid, const Field& phi, double p, double eta) {
  if (!(p >= 1.0) || !(eta > 0.0)) throw Error("probe needs p >= 1 and eta > 0");
  const Field px = gradient(grid, phi);
  const Field pxx = second_derivative(grid, phi);
  double L = 0.0, R = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double g = std::fabs(px[i]);
    L += std::pow(g, 2.0 * p + 2.0);
    R += std::pow(g, 2.0 * p - 2.0) * pxx[i] * pxx[i];
  }
  L *= grid.dx;
  R *= grid.dx;
  const double s = sup_norm(phi);
  if (s == 0.0) return 0.0;
  return std::max(0.0, (L - eta * R) / std::pow(s, 2.0 * p + 2.0));
}

double gn_probe(const Grid1D& grid, const Field& phi, double p, double q, double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) throw Error("probe needs lambda in (0,1)");
  const double nq = lp_norm(grid, phi, q);
  const double ngrad = lp_norm(grid, gradient(grid, phi), 2.0);
  const double denom = std::pow(ngrad, lambda) * std::pow(nq, 1.0 - lambda) + nq;
  if (denom == 0.0) return 0.0;
  return lp_norm(grid, phi, p) / denom;
}

// ---------------------------------------------------------------------------

namespace {
const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "not-applicable";
  }
}
}  // namespace

EstimateLedger build_ledger(const Trajectory& traj) {
  EstimateLedger led;
  const bool outside = traj.coeffs.outside_theorem;
  auto na_if_outside = [&](Verdict v) { return outside ? Verdict::NotApplicable : v; };

  {
    LedgerEntry e;
    e.name = "Energy identity residual";
    e.anchor = "energy-identity";
    if (traj.samples.size() >= 3) {
      const ResidualSeries r = energy_identity_residual(traj);
      e.max_value = r.max_abs;
      e.verdict = std::isfinite(r.max_abs) ? Verdict::Pass : Verdict::Fail;
    } else {
      e.verdict = Verdict::NotApplicable;
      e.note = "insufficient samples";
    }
    led.entries.push_back(e);
  }
  {
    const GronwallResult g = gronwall_check(traj);
    LedgerEntry e;
    e.name = "Energy envelope";
    e.anchor = "energy-envelope";
    e.verdict = g.pass ? Verdict::Pass : Verdict::Fail;
    e.max_value = g.c1;
    e.margin = g.min_margin;
    led.entries.push_back(e);
  }
  {
    LedgerEntry e;
    e.name = "Temperature nonnegativity";
    e.anchor = "theta-nonneg";
    double min_theta = 0.0, sup_theta = 0.0;
    for (const State& s : traj.samples) {
      for (double v : s.theta) {
        min_theta = std::min(min_theta, v);
        sup_theta = std::max(sup_theta, v);
      }
    }
    const double pos_tol = 1e-8 * (1.0 + sup_theta);
    e.max_value = min_theta;
    e.bound = -pos_tol;
    e.margin = min_theta + pos_tol;
    e.verdict = min_theta >= -pos_tol ? Verdict::Pass : Verdict::Fail;
    led.entries.push_back(e);
  }
  {
    const SeriesVerdict s = weighted_theta_dissipation(traj, traj.checks.p);
    LedgerEntry e;
    e.name = "Weighted temperature dissipation";
    e.anchor = "weighted-dissipation";
    e.max_value = s.value;
    e.verdict = na_if_outside(s.pass ? Verdict::Pass : Verdict::Fail);
    if (outside) e.note = "recorded informationally; hypotheses violated";
    led.entries.push_back(e);
  }
  {
    const SeriesVerdict s = theta_lq_time_integral(traj, traj.checks.q, traj.checks.r);
    LedgerEntry e;
    e.name = "Lq-in-time temperature integral";
    e.anchor = "theta-lq-time";
    e.max_value = s.value;
    e.note = s.note;
    Verdict v = s.pass ? Verdict::Pass : Verdict::Fail;
    if (!s.in_theorem) v = Verdict::NotApplicable;
    e.verdict = na_if_outside(v);
    led.entries.push_back(e);
  }
  {
    const MoserSequence seq = moser_cascade(traj, traj.checks.K);
    const MoserCheck chk = check_moser_recursion_log(
        std::log(seq.A), std::log(seq.B), seq.log_M);
    LedgerEntry e;
    e.name = "Velocity power cascade";
    e.anchor = "velocity-cascade";
    e.max_value = seq.plateau;
    e.bound = seq.B * seq.B * seq.A;
    e.verdict = na_if_outside(
        (chk.premise_holds && chk.conclusion_holds) ? Verdict::Pass : Verdict::Fail);
    std::ostringstream os;
    os << "A=" << seq.A << " B=" << seq.B;
    e.note = os.str();
    led.entries.push_back(e);
  }
  {
    const SeriesVerdict s = sup_velocity_series(traj);
    LedgerEntry e;
    e.name = "Velocity sup bound";
    e.anchor = "velocity-sup";
    e.max_value = s.value;
    e.note = s.note;
    e.verdict = na_if_outside(s.pass ? Verdict::Pass : Verdict::Fail);
    led.entries.push_back(e);
  }
  {
    LedgerEntry e;
    e.name = "Velocity modulus fit";
    e.anchor = "velocity-modulus";
    if (traj.samples.size() >= 16 && traj.grid.n >= 64) {
      const HoelderFit fit = hoelder_fit(traj);
      if (fit.constant_field) {
        e.note = "field constant";
        e.verdict = na_if_outside(Verdict::Pass);
      } else {
        e.max_value = fit.beta_hat;
        e.bound = fit.mu_hat;
        e.verdict = na_if_outside(
            (fit.beta_hat > 0.0 && fit.beta_hat <= 1.0 && std::isfinite(fit.mu_hat))
                ? Verdict::Pass
                : Verdict::Fail);
      }
    } else {
      e.verdict = Verdict::NotApplicable;
      e.note = "insufficient snapshots";
    }
    led.entries.push_back(e);
  }
  {
    const SeriesVerdict s = theta_h1_series(traj);
    LedgerEntry e;
    e.name = "Temperature gradient bound";
    e.anchor = "theta-h1";
    e.max_value = s.value;
    e.note = s.note;
    e.verdict = na_if_outside(s.pass ? Verdict::Pass : Verdict::Fail);
    led.entries.push_back(e);
  }
  {
    LedgerEntry e;
    e.name = "Extensibility monitor";
    e.anchor = "extensibility";
    e.max_value = blowup_indicator(traj.grid, traj.samples.back());
    e.verdict = traj.termination == Termination::Completed ? Verdict::Pass : Verdict::Fail;
    if (traj.termination == Termination::Diverged) {
      std::ostringstream os;
      os << "diverged, t_est=" << traj.t_est;
      e.note = os.str();
    }
    led.entries.push_back(e);
  }

  led.overall_pass = traj.termination == Termination::Completed;
  for (const auto& e : led.entries)
    if (e.verdict == Verdict::Fail) led.overall_pass = false;
  return led;
}

std::string ledger_summary(const EstimateLedger& ledger) {
  std::ostringstream os;
  for (const auto& e : ledger.entries) {
    os << std::left << std::setw(36) << e.name << " [" << verdict_str(e.verdict) << "]"
       << "  value=" << e.max_value;
    if (!e.note.empty()) os << "  (" << e.note << ")";
    os << "\n";
  }
  os << "overall: " << (ledger.overall_pass ? "pass" : "fail") << "\n";
  return os.str();
}

void write_ledger_csv(const EstimateLedger& ledger, std::ostream& os) {
  os << "check,anchor,verdict,max_value,bound,margin\n";
  os << std::setprecision(17);
  for (const auto& e : ledger.entries) {
    os << '"' << e.name << "\"," << e.anchor << ',' << verdict_str(e.verdict) << ','
       << e.max_value << ',' << e.bound << ',' << e.margin << "\n";
  }
}

}  // namespace tvk
