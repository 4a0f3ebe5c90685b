#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tvk/solver.hpp"

namespace tvk {

// ---------------------------------------------------------------------------
// functionals

/// 1/2 int v^2 + 1/2 int a(.,t) u_x^2 + int theta
double mechanical_energy(const Grid1D& grid, const State& s, const CoefficientSet& coeffs);

struct ResidualSeries {
  std::vector<double> t;
  std::vector<double> r;
  double max_abs = 0.0;
};

/// Centered-difference residual of d/dt(energy) = 1/2 int a_t u_x^2.
ResidualSeries energy_identity_residual(const Trajectory& traj);

struct GronwallResult {
  bool pass = false;
  double c1 = 0.0;
  double min_margin = 0.0;  // min over samples of bound(t) - y(t)
  double y0 = 0.0;
};

GronwallResult gronwall_check(const Trajectory& traj);

struct SeriesVerdict {
  std::vector<double> t;
  std::vector<double> series;   // per-sample values (or running integrals)
  double value = 0.0;           // headline number (total / max)
  bool pass = false;
  bool in_theorem = true;       // exponent admissibility, where applicable
  std::string note;
};

/// Running time integral of int (theta+1)^{p-2} theta_x^2, with a
/// saturation verdict (last-quarter increment <= 10x first-quarter increment).
SeriesVerdict weighted_theta_dissipation(const Trajectory& traj, double p);

/// Running time integral of ||theta+1||_{L^q}^r; in_theorem iff r < 2q/(q-1).
SeriesVerdict theta_lq_time_integral(const Trajectory& traj, double q, double r);

SeriesVerdict sup_velocity_series(const Trajectory& traj);

/// Per-sample int theta_x^2; pass iff bounded by a fitted c*exp(c10*t).
SeriesVerdict theta_h1_series(const Trajectory& traj);

// ---------------------------------------------------------------------------
// iteration cascade

struct MoserSequence {
  int K = 0;
  std::vector<double> log_M;  // log of sup_t int v^{2^k}, k = 1..K
  double A = 0.0;             // fixed from data: (1+|Omega|)*sup||v||_inf + 2
  double B = 1.0;             // smallest B >= 1 closing the recursion
  double plateau = 0.0;       // M_K^{1/2^K}
};

MoserSequence moser_cascade(const Trajectory& traj, int K = 6);

struct MoserCheck {
  bool premise_holds = false;
  bool conclusion_holds = false;
};

/// Checks M_k <= max{A^{2^k}, B^k M_{k-1}^2} and the induced bound
/// M_k^{1/2^k} <= B^2 max{A, M_1}. Inputs in log space; logA may be -inf.
MoserCheck check_moser_recursion_log(double logA, double logB,
                                     const std::vector<double>& log_M);

/// Linear-space convenience wrapper; M entries must be positive.
MoserCheck check_moser_recursion(double A, double B, const std::vector<double>& M);

/// Randomized trial of the recursion property: generates premise-satisfying
/// triples and counts conclusion violations (expected zero).
long long moser_property_trial(long long trials, unsigned long long seed);

// ---------------------------------------------------------------------------
// modulus-of-continuity fit

struct HoelderFit {
  double beta_hat = 0.0;  // clamped to (0,1]
  double mu_hat = 0.0;
  double r2 = 0.0;        // log-log regression quality
  bool constant_field = false;
  std::vector<double> h;         // spatial lags used in the fit
  std::vector<double> structure; // S(h)
};

/// Structure-function fit of the velocity modulus over dyadic spatial lags;
/// the temporal exponent is tied to beta/2.
HoelderFit hoelder_fit(const Trajectory& traj);

/// Same fit for a directly injected snapshot set (test fields).
HoelderFit hoelder_fit_snapshots(const Grid1D& grid, const std::vector<State>& snaps,
                                 double snap_dt);

// ---------------------------------------------------------------------------
// inequality probes

/// Constant needed to close int |phi_x|^{2p+2} <= eta int |phi_x|^{2p-2} phi_xx^2 + C ||phi||_inf^{2p+2}.
double ehrling_probe(const Grid1D& grid, const Field& phi, double p, double eta);

/// Empirical interpolation constant ||phi||_p / (||phi_x||_2^l ||phi||_q^{1-l} + ||phi||_q).
double gn_probe(const Grid1D& grid, const Field& phi, double p, double q, double lambda);

// ---------------------------------------------------------------------------
// ledger

enum class Verdict { Pass, Fail, NotApplicable };

struct LedgerEntry {
  std::string name;
  std::string anchor;  // estimate identifier in the report schema
  Verdict verdict = Verdict::Fail;
  double max_value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  std::string note;
};

struct EstimateLedger {
  std::vector<LedgerEntry> entries;
  bool overall_pass = false;
};

EstimateLedger build_ledger(const Trajectory& traj);

std::string ledger_summary(const EstimateLedger& ledger);
void write_ledger_csv(const EstimateLedger& ledger, std::ostream& os);

}  // namespace tvk
