#include "tvk/io.hpp"

#include <algorithm>
#include <iomanip>

namespace tvk {

void write_snapshot_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,x,u,v,theta\n";
  os << std::setprecision(17);
  const int thin = std::max(1, traj.snapshot_stride / std::max(1, traj.sample_stride));
  const size_t m = traj.samples.size();
  for (size_t k = 0; k < m; ++k) {
    if (k % thin != 0 && k != m - 1) continue;
    const State& s = traj.samples[k];
    for (int i = 0; i < traj.grid.n; ++i)
      os << s.t << ',' << traj.grid.center(i) << ',' << s.u[i] << ',' << s.v[i] << ','
         << s.theta[i] << "\n";
  }
}

void write_functionals_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,mechanical_energy,int_v2,int_a_ux2,int_theta,int_theta_x2,sup_v,min_theta,"
        "blowup_indicator\n";
  os << std::setprecision(17);
  for (const State& s : traj.samples) {
    const Field ux = gradient(traj.grid, s.u);
    const Field tx = gradient(traj.grid, s.theta);
    double v2 = 0.0, aux2 = 0.0, th = 0.0, tx2 = 0.0, mint = s.theta[0];
    for (int i = 0; i < traj.grid.n; ++i) {
      v2 += s.v[i] * s.v[i];
      aux2 += traj.coeffs.a(traj.grid.center(i), s.t) * ux[i] * ux[i];
      th += s.theta[i];
      tx2 += tx[i] * tx[i];
      mint = std::min(mint, s.theta[i]);
    }
    const double dx = traj.grid.dx;
    os << s.t << ',' << 0.5 * v2 * dx + 0.5 * aux2 * dx + th * dx << ',' << v2 * dx << ','
       << aux2 * dx << ',' << th * dx << ',' << tx2 * dx << ',' << sup_norm(s.v) << ','
       << mint << ',' << blowup_indicator(traj.grid, s) << "\n";
  }
}

void write_convergence_csv(const ConvergenceStudy& study, std::ostream& os) {
  os << "n,dt,err_u,err_v,err_theta,order_u,order_v,order_theta\n";
  os << std::setprecision(17);
  for (const auto& r : study.rows)
    os << r.n << ',' << r.dt << ',' << r.err_u << ',' << r.err_v << ',' << r.err_theta
       << ',' << r.order_u << ',' << r.order_v << ',' << r.order_theta << "\n";
}

}  // namespace tvk
