#pragma once

#include <optional>
#include <vector>

#include "tvk/model.hpp"

namespace tvk {

enum class Termination { Completed, Diverged };

struct CheckParams {
  double p = 0.5;  // weighted-dissipation exponent, in (0,1)
  double q = 3.0;  // L^q-in-time exponents
  double r = 2.0;
  int K = 6;       // iteration depth for the L^{2^k} cascade
};

struct SimConfig {
  double x_left = 0.0;
  double x_right = 1.0;
  int n = 256;

  CoefficientSet coeffs;
  InitialData init;

  double T = 1.0;
  double dt = 0.0;           // 0 -> default 0.25*dx
  int sample_stride = 0;     // functional samples; 0 -> auto (~2000 samples)
  int snapshot_stride = 0;   // CSV snapshots; 0 -> auto (~50 snapshots)
  double blowup_threshold = 1e6;

  // optional manufactured sources, added to the two equations
  SpaceTimeFn source_u;
  SpaceTimeFn source_theta;

  CheckParams checks;

  double resolved_dt() const;
  int total_steps() const;
  int resolved_sample_stride() const;
  int resolved_snapshot_stride() const;
  void validate() const;  // throws "invalid configuration" on inconsistency
};

/// Recorded time series of states plus run metadata. Immutable once produced.
struct Trajectory {
  Grid1D grid;
  CoefficientSet coeffs;
  CheckParams checks;
  double dt = 0.0;
  int sample_stride = 1;
  int snapshot_stride = 1;      // in steps, for CSV thinning
  std::vector<State> samples;   // strictly increasing t, includes t=0 and the end
  Termination termination = Termination::Completed;
  double t_est = 0.0;           // threshold-crossing time if diverged

  double sample_dt() const { return dt * sample_stride; }
};

/// One IMEX step: implicit viscous velocity solve, displacement update,
/// implicit heat solve with sources lagged at the old temperature.
State step_imex(const Grid1D& grid, const State& s, double dt,
                const CoefficientSet& coeffs, const Field* source_u = nullptr,
                const Field* source_theta = nullptr);

/// W^{1,2}-type blow-up monitor: (int theta^2 + int theta_x^2)^{1/2}.
double blowup_indicator(const Grid1D& grid, const State& s);

Trajectory run(const SimConfig& config);

}  // namespace tvk
