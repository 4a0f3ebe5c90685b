#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tvk/grid.hpp"

namespace tvk {

using ScalarFn = std::function<double(double)>;
using SpaceTimeFn = std::function<double(double, double)>;

/// Model coefficients of the coupled system together with the declared
/// constants they are supposed to satisfy. Immutable after construction.
struct CoefficientSet {
  ScalarFn gamma;   // viscosity coefficient, argument is the temperature
  SpaceTimeFn a;    // elastic stiffness a(x,t)
  ScalarFn f;       // thermal coupling

  double c_gamma = 0.0;  // lower viscosity bound
  double C_gamma = 0.0;  // upper viscosity bound
  double C_f = 0.0;      // coupling-growth constant
  double alpha = 0.0;    // growth exponent, in (0, 5/6) inside the theorem
  double D = 1.0;        // thermal diffusivity

  // Set when declared constants violate a hypothesis; such sets stay
  // runnable, only the ledger verdict notes the missing guarantee.
  bool outside_theorem = false;
  std::string violated_hypothesis;
};

/// 1D scalar reductions of the physical piezoelectric parameters.
struct PiezoParams {
  double rho = 1.0;        // density
  double d = 1.0;          // viscosity
  double C_elastic = 1.0;  // elastic modulus
  double B = 0.0;          // thermal dilation
  double e = 0.0;          // piezo coupling
  double eps = 1.0;        // permittivity
};

struct InitialData {
  ScalarFn u0;
  ScalarFn u0t;
  ScalarFn theta0;
};

/// Simulation unknowns at one time instant.
struct State {
  double t = 0.0;
  Field u;
  Field v;      // = u_t
  Field theta;
  bool diverged = false;
};

struct HypothesisCheck {
  std::string tag;     // e.g. "hyp-gamma"
  bool passed = false;
  double worst_zeta = 0.0;   // worst violating sample (if any)
  double worst_value = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<HypothesisCheck> checks;
  bool pass() const;
  const HypothesisCheck* find(const std::string& tag) const;
};

/// Sampling lattice for the hypothesis checks.
struct SampleLattice {
  double zeta_max = 100.0;  // must be >= 100
  int count = 200;          // must be >= 100
  // domain on which a(x,t) is probed
  double x_left = 0.0;
  double x_right = 1.0;
  double t_max = 10.0;
};

ValidationReport validate_coefficients(const CoefficientSet& coeffs,
                                       const SampleLattice& lattice = {});

CoefficientSet piezo_to_coefficients(const PiezoParams& p);

/// Samples initial data at cell centers, verifies nonnegativity of the
/// temperature and vanishing boundary traces (tolerance 10*dx^2).
State build_initial_data(const InitialData& init, const Grid1D& grid);

}  // namespace tvk
