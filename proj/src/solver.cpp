#include "tvk/solver.hpp"

#include <algorithm>
#include <cmath>

namespace tvk {

double SimConfig::resolved_dt() const {
  if (dt > 0.0) return dt;
  return 0.25 * (x_right - x_left) / n;
}

int SimConfig::total_steps() const {
  return std::max(1, static_cast<int>(std::llround(T / resolved_dt())));
}

int SimConfig::resolved_sample_stride() const {
  if (sample_stride > 0) return sample_stride;
  return std::max(1, total_steps() / 2000);
}

int SimConfig::resolved_snapshot_stride() const {
  if (snapshot_stride > 0) return snapshot_stride;
  return std::max(1, total_steps() / 50);
}

void SimConfig::validate() const {
  if (!(T > 0.0) || !(resolved_dt() > 0.0)) throw Error("invalid configuration: T and dt must be positive");
  if (n < 8) throw Error("invalid configuration: n below minimum 8");
  if (!(x_left < x_right)) throw Error("invalid configuration: empty domain");
  if (sample_stride < 0 || snapshot_stride < 0) throw Error("invalid configuration: strides must be >= 1");
  if (!(blowup_threshold > 0.0)) throw Error("invalid configuration: blow-up threshold must be positive");
  if (!coeffs.gamma || !coeffs.a || !coeffs.f) throw Error("invalid configuration: missing coefficient functions");
  if (!(coeffs.D > 0.0)) throw Error("invalid configuration: diffusivity must be positive");
  if (!(checks.p > 0.0) || !(checks.p < 1.0)) throw Error("invalid configuration: p must lie in (0,1)");
  if (!(checks.q > 1.0) || !(checks.r > 0.0)) throw Error("invalid configuration: need q > 1 and r > 0");
  if (checks.K < 2) throw Error("invalid configuration: K must be >= 2");
}

namespace {

// Solves (I - dt*div_flux(kappa_face, .)) x = rhs. The matrix is a symmetric
// M-matrix with unit row sums at zero-flux boundaries; Thomas elimination.
Field solve_implicit(const Grid1D& g, const Field& kappa_face, double dt, const Field& rhs) {
  const int n = g.n;
  const double r = dt / (g.dx * g.dx);
  Field diag(n), upper(n - 1), x(rhs);
  for (int i = 0; i < n; ++i) {
    const double kl = (i == 0) ? 0.0 : kappa_face[i];
    const double kr = (i == n - 1) ? 0.0 : kappa_face[i + 1];
    if ((i > 0 && !(kl > 0.0)) || (i < n - 1 && !(kr > 0.0)))
      throw Error("non-elliptic coefficient");
    diag[i] = 1.0 + r * (kl + kr);
    if (i < n - 1) upper[i] = -r * kr;
  }
  // forward sweep (matrix symmetric: lower_i == upper_{i-1})
  for (int i = 1; i < n; ++i) {
    if (!(diag[i - 1] > 0.0)) throw Error("scheme breakdown");
    const double m = upper[i - 1] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    x[i] -= m * x[i - 1];
  }
  if (!(diag[n - 1] > 0.0)) throw Error("scheme breakdown");
  x[n - 1] /= diag[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = (x[i] - upper[i] * x[i + 1]) / diag[i];
  return x;
}

}  // namespace

State step_imex(const Grid1D& grid, const State& s, double dt,
                const CoefficientSet& coeffs, const Field* source_u,
                const Field* source_theta) {
  if (!(dt > 0.0)) throw Error("step_imex: dt must be positive");
  const int n = grid.n;
  const double t_new = s.t + dt;

  // coefficients frozen at the old temperature
  Field gamma_cell(n), f_cell(n);
  for (int i = 0; i < n; ++i) {
    gamma_cell[i] = coeffs.gamma(s.theta[i]);
    f_cell[i] = coeffs.f(s.theta[i]);
  }
  Field a_cell(n);
  for (int i = 0; i < n; ++i) a_cell[i] = coeffs.a(grid.center(i), t_new);

  // (1) velocity: (I - dt*div_flux(gamma,.)) v = v + dt*[div_flux(a,u) + grad f + S_u]
  const Field gamma_face = face_average(grid, gamma_cell);
  const Field a_face = face_average(grid, a_cell);
  Field rhs_v = s.v;
  const Field elastic = div_flux(grid, a_face, s.u);
  const Field grad_f = gradient(grid, f_cell);
  for (int i = 0; i < n; ++i) {
    double r = elastic[i] + grad_f[i];
    if (source_u) r += (*source_u)[i];
    rhs_v[i] += dt * r;
  }
  State out;
  out.t = t_new;
  out.v = solve_implicit(grid, gamma_face, dt, rhs_v);

  // (2) displacement, backward coupling
  out.u.resize(n);
  for (int i = 0; i < n; ++i) out.u[i] = s.u[i] + dt * out.v[i];

  // (3) temperature: (I - dt*D*laplacian) theta = theta + dt*[gamma*vx^2 + f*vx + S_theta]
  const Field vx = gradient(grid, out.v);
  Field rhs_t = s.theta;
  for (int i = 0; i < n; ++i) {
    double src = gamma_cell[i] * vx[i] * vx[i] + f_cell[i] * vx[i];
    if (source_theta) src += (*source_theta)[i];
    rhs_t[i] += dt * src;
  }
  const Field d_face(n + 1, coeffs.D);
  out.theta = solve_implicit(grid, d_face, dt, rhs_t);

  out.diverged = !(all_finite(out.u) && all_finite(out.v) && all_finite(out.theta));
  return out;
}

double blowup_indicator(const Grid1D& grid, const State& s) {
  const Field tx = gradient(grid, s.theta);
  double s2 = 0.0;
  for (int i = 0; i < grid.n; ++i) s2 += s.theta[i] * s.theta[i] + tx[i] * tx[i];
  return std::sqrt(s2 * grid.dx);
}

Trajectory run(const SimConfig& config) {
  config.validate();
  const Grid1D grid = Grid1D::make(config.x_left, config.x_right, config.n);
  const double dt = config.resolved_dt();
  const int steps = config.total_steps();
  const int stride = config.resolved_sample_stride();

  Trajectory traj;
  traj.grid = grid;
  traj.coeffs = config.coeffs;
  traj.checks = config.checks;
  traj.dt = dt;
  traj.sample_stride = stride;
  traj.snapshot_stride = config.resolved_snapshot_stride();

  State s = build_initial_data(config.init, grid);
  traj.samples.push_back(s);

  Field src_u, src_t;
  for (int k = 1; k <= steps; ++k) {
    const Field* pu = nullptr;
    const Field* pt = nullptr;
    if (config.source_u) {
      src_u = sample(grid, [&](double x) { return config.source_u(x, s.t); });
      pu = &src_u;
    }
    if (config.source_theta) {
      src_t = sample(grid, [&](double x) { return config.source_theta(x, s.t); });
      pt = &src_t;
    }
    s = step_imex(grid, s, dt, config.coeffs, pu, pt);

    const bool bad = s.diverged || blowup_indicator(grid, s) > config.blowup_threshold;
    if (bad) {
      s.diverged = true;
      traj.samples.push_back(s);
      traj.termination = Termination::Diverged;
      traj.t_est = s.t;
      return traj;
    }
    if (k % stride == 0 || k == steps) traj.samples.push_back(s);
  }
  traj.termination = Termination::Completed;
  return traj;
}

}  // namespace tvk
