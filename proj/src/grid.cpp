#include "tvk/grid.hpp"

#include <algorithm>
#include <cmath>

namespace tvk {

Grid1D Grid1D::make(double x_left, double x_right, int n) {
  if (!(x_left < x_right)) throw Error("grid: x_left must be < x_right");
  if (n < 8) throw Error("n below minimum 8");
  Grid1D g;
  g.x_left = x_left;
  g.x_right = x_right;
  g.n = n;
  g.dx = (x_right - x_left) / n;
  return g;
}

Field sample(const Grid1D& g, const std::function<double(double)>& fn) {
  Field out(g.n);
  for (int i = 0; i < g.n; ++i) out[i] = fn(g.center(i));
  return out;
}

bool all_finite(const Field& f) {
  for (double v : f)
    if (!std::isfinite(v)) return false;
  return true;
}

static void check_size(const Grid1D& g, const Field& phi, const char* who) {
  if (static_cast<int>(phi.size()) != g.n)
    throw Error(std::string(who) + ": field size does not match grid");
}

Field gradient(const Grid1D& g, const Field& phi) {
  check_size(g, phi, "gradient");
  const int n = g.n;
  Field out(n);
  const double inv2dx = 1.0 / (2.0 * g.dx);
  for (int i = 0; i < n; ++i) {
    const double left = (i == 0) ? phi[0] : phi[i - 1];
    const double right = (i == n - 1) ? phi[n - 1] : phi[i + 1];
    out[i] = (right - left) * inv2dx;
  }
  return out;
}

Field second_derivative(const Grid1D& g, const Field& phi) {
  check_size(g, phi, "second_derivative");
  const int n = g.n;
  Field out(n);
  const double invdx2 = 1.0 / (g.dx * g.dx);
  for (int i = 0; i < n; ++i) {
    const double left = (i == 0) ? phi[0] : phi[i - 1];
    const double right = (i == n - 1) ? phi[n - 1] : phi[i + 1];
    out[i] = (left - 2.0 * phi[i] + right) * invdx2;
  }
  return out;
}

Field face_average(const Grid1D& g, const Field& kappa_cell) {
  check_size(g, kappa_cell, "face_average");
  const int n = g.n;
  Field face(n + 1);
  face[0] = kappa_cell[0];
  face[n] = kappa_cell[n - 1];
  for (int i = 1; i < n; ++i) face[i] = 0.5 * (kappa_cell[i - 1] + kappa_cell[i]);
  return face;
}

Field div_flux(const Grid1D& g, const Field& kappa_face, const Field& phi) {
  check_size(g, phi, "div_flux");
  const int n = g.n;
  if (static_cast<int>(kappa_face.size()) != n + 1)
    throw Error("div_flux: kappa_face must have n+1 entries");
  for (int i = 1; i < n; ++i)
    if (!(kappa_face[i] > 0.0)) throw Error("non-elliptic coefficient");
  Field out(n);
  const double invdx2 = 1.0 / (g.dx * g.dx);
  for (int i = 0; i < n; ++i) {
    // boundary faces carry zero flux
    const double flux_r = (i == n - 1) ? 0.0 : kappa_face[i + 1] * (phi[i + 1] - phi[i]);
    const double flux_l = (i == 0) ? 0.0 : kappa_face[i] * (phi[i] - phi[i - 1]);
    out[i] = (flux_r - flux_l) * invdx2;
  }
  return out;
}

double integrate(const Grid1D& g, const Field& phi) {
  check_size(g, phi, "integrate");
  double s = 0.0;
  for (double v : phi) s += v;
  return s * g.dx;
}

double lp_norm(const Grid1D& g, const Field& phi, double p) {
  check_size(g, phi, "lp_norm");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error("lp_norm: p must be finite and >= 1");
  // scale by the max to keep large powers representable
  const double m = sup_norm(phi);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : phi) s += std::pow(std::fabs(v) / m, p);
  return m * std::pow(s * g.dx, 1.0 / p);
}

double sup_norm(const Field& phi) {
  double m = 0.0;
  for (double v : phi) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace tvk
