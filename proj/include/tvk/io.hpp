#pragma once

#include <ostream>

#include "tvk/estimates.hpp"
#include "tvk/mms.hpp"

namespace tvk {

/// Columns t,x,u,v,theta; one row per (snapshot, cell), 17 significant digits.
void write_snapshot_csv(const Trajectory& traj, std::ostream& os);

/// Per-sample functional series, one row per recorded sample.
void write_functionals_csv(const Trajectory& traj, std::ostream& os);

/// Columns n,dt,err_u,err_v,err_theta,order_u,order_v,order_theta.
void write_convergence_csv(const ConvergenceStudy& study, std::ostream& os);

}  // namespace tvk
