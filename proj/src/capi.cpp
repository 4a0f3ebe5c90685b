#include "tvk.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>

#include "tvk/config.hpp"
#include "tvk/estimates.hpp"
#include "tvk/io.hpp"
#include "tvk/mms.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

std::vector<std::string> to_overrides(const char* const* overrides, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.emplace_back(overrides[i]);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const tvk::Error& e) {
    return fail(TVK_ECONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(TVK_EINVAL, e.what());
  }
}

int write_file(const char* path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream os(path);
  if (!os) return fail(TVK_EIO, std::string("cannot open for writing: ") + path);
  writer(os);
  return TVK_OK;
}

bool spatial_orders_ok(const tvk::ConvergenceStudy& study) {
  if (study.exact) return true;
  if (!study.converging || study.rows.size() < 2) return false;
  const auto& r = study.rows.back();
  auto in = [](double o) { return o >= 1.8 && o <= 2.2; };
  return in(r.order_u) && in(r.order_v) && in(r.order_theta);
}

bool temporal_orders_ok(const tvk::ConvergenceStudy& study) {
  if (study.exact) return true;
  if (study.rows.size() < 2) return false;
  const auto& r = study.rows.back();
  auto in = [](double o) { return o >= 0.9 && o <= 1.1; };
  return in(r.order_u) && in(r.order_v) && in(r.order_theta);
}

}  // namespace

struct tvk_sim {
  tvk::SimConfig config;
  std::optional<tvk::Trajectory> traj;
  std::optional<tvk::EstimateLedger> ledger;
};

extern "C" {

const char* tvk_last_error(void) { return g_last_error.c_str(); }

int tvk_sim_create(const char* config_path, const char* const* overrides,
                   int n_overrides, tvk_sim** out) {
  if (!config_path || !out) return fail(TVK_EINVAL, "null argument");
  return guarded([&]() -> int {
    auto sim = std::make_unique<tvk_sim>();
    sim->config = tvk::parse_config(config_path, to_overrides(overrides, n_overrides));
    *out = sim.release();
    return int(TVK_OK);
  });
}

int tvk_sim_create_scenario(const char* scenario, const char* const* overrides,
                            int n_overrides, tvk_sim** out) {
  if (!scenario || !out) return fail(TVK_EINVAL, "null argument");
  return guarded([&]() -> int {
    std::string text = std::string("[run]\nscenario = ") + scenario + "\n";
    auto sim = std::make_unique<tvk_sim>();
    sim->config = tvk::parse_config_text(text, to_overrides(overrides, n_overrides));
    *out = sim.release();
    return int(TVK_OK);
  });
}

void tvk_sim_destroy(tvk_sim* sim) { delete sim; }

int tvk_sim_run(tvk_sim* sim) {
  if (!sim) return fail(TVK_EINVAL, "null handle");
  return guarded([&]() -> int {
    sim->traj = tvk::run(sim->config);
    sim->ledger.reset();
    return int(TVK_OK);
  });
}

int tvk_sim_termination(const tvk_sim* sim, int* diverged, double* t_est) {
  if (!sim || !sim->traj) return fail(TVK_EINVAL, "simulation has not been run");
  if (diverged) *diverged = sim->traj->termination == tvk::Termination::Diverged ? 1 : 0;
  if (t_est) *t_est = sim->traj->t_est;
  return TVK_OK;
}

int tvk_sim_write_snapshot_csv(const tvk_sim* sim, const char* path) {
  if (!sim || !sim->traj || !path) return fail(TVK_EINVAL, "simulation has not been run");
  return write_file(path, [&](std::ostream& os) { tvk::write_snapshot_csv(*sim->traj, os); });
}

int tvk_sim_write_functionals_csv(const tvk_sim* sim, const char* path) {
  if (!sim || !sim->traj || !path) return fail(TVK_EINVAL, "simulation has not been run");
  return write_file(path,
                    [&](std::ostream& os) { tvk::write_functionals_csv(*sim->traj, os); });
}

int tvk_sim_verify(tvk_sim* sim, const char* ledger_csv_path, int* overall_pass) {
  if (!sim) return fail(TVK_EINVAL, "null handle");
  return guarded([&]() -> int {
    if (!sim->traj) sim->traj = tvk::run(sim->config);
    sim->ledger = tvk::build_ledger(*sim->traj);
    if (overall_pass) *overall_pass = sim->ledger->overall_pass ? 1 : 0;
    if (ledger_csv_path)
      return write_file(ledger_csv_path, [&](std::ostream& os) {
        tvk::write_ledger_csv(*sim->ledger, os);
      });
    return int(TVK_OK);
  });
}

int tvk_sim_ledger_text(const tvk_sim* sim, char* buf, size_t buflen) {
  if (!sim || !sim->ledger || !buf || buflen == 0)
    return fail(TVK_EINVAL, "verify before requesting the ledger summary");
  const std::string text = tvk::ledger_summary(*sim->ledger);
  std::strncpy(buf, text.c_str(), buflen - 1);
  buf[buflen - 1] = '\0';
  return TVK_OK;
}

int tvk_mms_study(const char* case_id, const int* resolutions, int count,
                  double horizon, const char* csv_path, int* orders_ok) {
  if (!case_id || !resolutions || count < 3) return fail(TVK_EINVAL, "bad study arguments");
  return guarded([&]() -> int {
    const tvk::MmsCase c = tvk::make_mms_case(case_id);
    const std::vector<int> ns(resolutions, resolutions + count);
    const tvk::ConvergenceStudy study = tvk::convergence_study(c, ns, horizon);
    if (orders_ok) *orders_ok = spatial_orders_ok(study) ? 1 : 0;
    if (csv_path)
      return write_file(csv_path,
                        [&](std::ostream& os) { tvk::write_convergence_csv(study, os); });
    return int(TVK_OK);
  });
}

int tvk_mms_temporal(const char* case_id, int n, const double* dts, int count,
                     double horizon, const char* csv_path, int* order_ok) {
  if (!case_id || !dts || count < 2) return fail(TVK_EINVAL, "bad study arguments");
  return guarded([&]() -> int {
    const tvk::MmsCase c = tvk::make_mms_case(case_id);
    const std::vector<double> steps(dts, dts + count);
    const tvk::ConvergenceStudy study = tvk::temporal_study(c, n, steps, horizon);
    if (order_ok) *order_ok = temporal_orders_ok(study) ? 1 : 0;
    if (csv_path)
      return write_file(csv_path,
                        [&](std::ostream& os) { tvk::write_convergence_csv(study, os); });
    return int(TVK_OK);
  });
}

int tvk_moser_trials(long long trials, unsigned long long seed, long long* violations) {
  if (trials <= 0 || !violations) return fail(TVK_EINVAL, "bad trial arguments");
  return guarded([&]() -> int {
    *violations = tvk::moser_property_trial(trials, seed);
    return int(TVK_OK);
  });
}

int tvk_probe_table(int m_max, int grid_n, double p, double eta, const char* csv_path,
                    int* uniform_ok) {
  if (m_max < 1 || grid_n < 8) return fail(TVK_EINVAL, "bad probe arguments");
  return guarded([&]() -> int {
    const tvk::Grid1D g = tvk::Grid1D::make(0.0, 1.0, grid_n);
    constexpr double kPi = 3.14159265358979323846;
    std::vector<double> ehr, gn;
    for (int m = 1; m <= m_max; ++m) {
      const tvk::Field phi =
          tvk::sample(g, [&](double x) { return std::cos(m * kPi * x); });
      ehr.push_back(tvk::ehrling_probe(g, phi, p, eta));
      gn.push_back(tvk::gn_probe(g, phi, 4.0, 2.0, 0.25));
    }
    bool ok = true;
    for (int m = 1; m < m_max; ++m) {
      if (ehr[m] > 2.0 * ehr[0] + 1e-9) ok = false;
      if (gn[m] > 2.0 * gn[0] + 1e-9) ok = false;
    }
    if (uniform_ok) *uniform_ok = ok ? 1 : 0;
    if (csv_path)
      return write_file(csv_path, [&](std::ostream& os) {
        os << "m,ehrling_C,gn_ratio\n" << std::setprecision(17);
        for (int m = 1; m <= m_max; ++m)
          os << m << ',' << ehr[m - 1] << ',' << gn[m - 1] << "\n";
      });
    return int(TVK_OK);
  });
}

int tvk_sweep(const char* config_path, const char* key, const char* const* values,
              int count, const char* out_csv, int* all_completed) {
  if (!config_path || !key || !values || count < 1 || !out_csv)
    return fail(TVK_EINVAL, "bad sweep arguments");
  return guarded([&]() -> int {
    struct Row {
      std::string value;
      bool diverged = false;
      double t_end = 0, t_est = 0, energy = 0, indicator = 0;
    };
    std::vector<std::future<Row>> futs;
    for (int i = 0; i < count; ++i) {
      const std::string value = values[i];
      futs.push_back(std::async(std::launch::async, [config_path, key, value] {
        const tvk::SimConfig cfg = tvk::parse_config(
            config_path, {std::string(key) + "=" + value});
        const tvk::Trajectory traj = tvk::run(cfg);
        Row row;
        row.value = value;
        row.diverged = traj.termination == tvk::Termination::Diverged;
        row.t_end = traj.samples.back().t;
        row.t_est = traj.t_est;
        row.energy =
            tvk::mechanical_energy(traj.grid, traj.samples.back(), traj.coeffs);
        row.indicator = tvk::blowup_indicator(traj.grid, traj.samples.back());
        return row;
      }));
    }
    std::vector<Row> rows;
    for (auto& f : futs) rows.push_back(f.get());
    bool completed = true;
    for (const auto& r : rows) completed = completed && !r.diverged;
    if (all_completed) *all_completed = completed ? 1 : 0;
    return write_file(out_csv, [&](std::ostream& os) {
      os << "value,termination,t_end,t_est,final_energy,final_indicator\n"
         << std::setprecision(17);
      for (const auto& r : rows)
        os << r.value << ',' << (r.diverged ? "diverged" : "completed") << ','
           << r.t_end << ',' << r.t_est << ',' << r.energy << ',' << r.indicator
           << "\n";
    });
  });
}

}  // extern "C"
