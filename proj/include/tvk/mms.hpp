#pragma once

#include <string>
#include <vector>

#include "tvk/solver.hpp"

namespace tvk {

/// Manufactured case: closed-form fields with compatible boundary data,
/// source terms that make them solve the forced system exactly.
struct MmsCase {
  std::string id;
  CoefficientSet coeffs;
  SpaceTimeFn u_exact;
  SpaceTimeFn v_exact;      // time derivative of u_exact
  SpaceTimeFn theta_exact;
  SpaceTimeFn source_u;
  SpaceTimeFn source_theta;
};

/// Known ids: "trig-constant-coeff", "trig-variable-a", "degenerate-zero".
/// Construction self-checks the analytic sources against a high-order
/// finite-difference substitution at random points.
MmsCase make_mms_case(const std::string& id);

struct ConvergenceRow {
  int n = 0;
  double dt = 0.0;
  double err_u = 0.0, err_v = 0.0, err_theta = 0.0;
  double order_u = 0.0, order_v = 0.0, order_theta = 0.0;  // vs previous row
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  bool converging = true;   // errors strictly decreasing across rows
  bool exact = false;       // all errors at round-off (degenerate case)
};

/// Spatial study: dt = 0.25*dx^2 so the temporal error is subdominant.
ConvergenceStudy convergence_study(const MmsCase& c, const std::vector<int>& resolutions,
                                   double T = 0.5);

/// Temporal study at fixed resolution with a list of halving dts.
ConvergenceStudy temporal_study(const MmsCase& c, int n, const std::vector<double>& dts,
                                double T = 0.5);

}  // namespace tvk
