#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvk {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// One scalar array on a Grid1D, cell-centered.
using Field = std::vector<double>;

/// Uniform cell-centered grid on an open interval; Neumann handling via
/// mirrored ghost cells, which makes zero boundary flux exact.
struct Grid1D {
  double x_left = 0.0;
  double x_right = 1.0;
  int n = 0;
  double dx = 0.0;

  static Grid1D make(double x_left, double x_right, int n);

  double center(int i) const { return x_left + (i + 0.5) * dx; }
  double length() const { return x_right - x_left; }
};

Field sample(const Grid1D& g, const std::function<double(double)>& fn);

bool all_finite(const Field& f);

/// Central difference with mirrored ghosts (phi[-1]=phi[0], phi[n]=phi[n-1]).
Field gradient(const Grid1D& g, const Field& phi);

/// Second derivative in divergence form with unit coefficient (mirrored ghosts).
Field second_derivative(const Grid1D& g, const Field& phi);

/// Face coefficients (n+1 entries) from cell values by arithmetic mean.
/// Boundary faces get the adjacent cell value; div_flux zeroes them anyway.
Field face_average(const Grid1D& g, const Field& kappa_cell);

/// (1/dx)[k_{i+1/2}(phi_{i+1}-phi_i)/dx - k_{i-1/2}(phi_i-phi_{i-1})/dx],
/// boundary faces carry zero flux. kappa_face has n+1 entries, interior > 0.
Field div_flux(const Grid1D& g, const Field& kappa_face, const Field& phi);

double integrate(const Grid1D& g, const Field& phi);
double lp_norm(const Grid1D& g, const Field& phi, double p);
double sup_norm(const Field& phi);

}  // namespace tvk
