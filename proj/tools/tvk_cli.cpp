// Command-line front end; talks to the solver only through the C API.
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tvk.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

int exit_code_for(int rc) {
  if (rc == TVK_OK) return kExitOk;
  if (rc == TVK_ECHECK) return kExitCheckFailed;
  return kExitConfigError;
}

int report(int rc) {
  if (rc == TVK_OK) return kExitOk;
  std::fprintf(stderr, "error: %s\n", tvk_last_error());
  return exit_code_for(rc);
}

std::vector<const char*> as_cstrs(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

struct SimGuard {
  tvk_sim* sim = nullptr;
  ~SimGuard() { tvk_sim_destroy(sim); }
};

int make_sim(const std::string& config, const std::vector<std::string>& overrides,
             SimGuard& guard) {
  const auto ovs = as_cstrs(overrides);
  return tvk_sim_create(config.c_str(), ovs.empty() ? nullptr : ovs.data(),
                        static_cast<int>(ovs.size()), &guard.sim);
}

int cmd_run(const std::string& config, const std::string& out,
            const std::vector<std::string>& overrides) {
  SimGuard g;
  int rc = make_sim(config, overrides, g);
  if (rc != TVK_OK) return report(rc);
  rc = tvk_sim_run(g.sim);
  if (rc != TVK_OK) return report(rc);

  int diverged = 0;
  double t_est = 0.0;
  tvk_sim_termination(g.sim, &diverged, &t_est);
  rc = tvk_sim_write_snapshot_csv(g.sim, (out + "/snapshots.csv").c_str());
  if (rc != TVK_OK) return report(rc);
  rc = tvk_sim_write_functionals_csv(g.sim, (out + "/functionals.csv").c_str());
  if (rc != TVK_OK) return report(rc);

  if (diverged)
    std::printf("termination: diverged (t_est = %.6g)\n", t_est);
  else
    std::printf("termination: completed\n");
  std::printf("wrote %s/snapshots.csv and %s/functionals.csv\n", out.c_str(),
              out.c_str());
  return kExitOk;  // divergence is a result, not an error
}

int cmd_verify(const std::string& config, const std::string& out,
               const std::vector<std::string>& overrides) {
  SimGuard g;
  int rc = make_sim(config, overrides, g);
  if (rc != TVK_OK) return report(rc);
  int pass = 0;
  rc = tvk_sim_verify(g.sim, (out + "/ledger.csv").c_str(), &pass);
  if (rc != TVK_OK) return report(rc);

  char buf[8192];
  if (tvk_sim_ledger_text(g.sim, buf, sizeof buf) == TVK_OK) std::printf("%s", buf);
  std::printf("wrote %s/ledger.csv\n", out.c_str());
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_mms(const std::string& case_id, const std::string& out, bool temporal,
            double horizon) {
  int ok = 0, rc;
  if (temporal) {
    const double dts[] = {0.02, 0.01, 0.005};
    rc = tvk_mms_temporal(case_id.c_str(), 256, dts, 3, horizon,
                          (out + "/convergence.csv").c_str(), &ok);
  } else {
    const int ns[] = {64, 128, 256};
    rc = tvk_mms_study(case_id.c_str(), ns, 3, horizon,
                       (out + "/convergence.csv").c_str(), &ok);
  }
  if (rc != TVK_OK) return report(rc);
  std::printf("case %s: observed orders %s; wrote %s/convergence.csv\n",
              case_id.c_str(), ok ? "within target" : "OUT OF TARGET", out.c_str());
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const std::string& config, const std::string& key,
              const std::vector<std::string>& values, const std::string& out) {
  const auto vals = as_cstrs(values);
  int all_completed = 0;
  const int rc = tvk_sweep(config.c_str(), key.c_str(), vals.data(),
                           static_cast<int>(vals.size()),
                           (out + "/sweep.csv").c_str(), &all_completed);
  if (rc != TVK_OK) return report(rc);
  std::printf("%zu runs, %s; wrote %s/sweep.csv\n", values.size(),
              all_completed ? "all completed" : "some diverged", out.c_str());
  return kExitOk;
}

int cmd_moser(long long trials, std::uint64_t seed) {
  long long violations = 0;
  const int rc = tvk_moser_trials(trials, seed, &violations);
  if (rc != TVK_OK) return report(rc);
  std::printf("%lld trials, %lld violations\n", trials, violations);
  return violations == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_probe(int m_max, int n, double p, double eta, const std::string& out) {
  int uniform = 0;
  const int rc =
      tvk_probe_table(m_max, n, p, eta, (out + "/probes.csv").c_str(), &uniform);
  if (rc != TVK_OK) return report(rc);
  std::printf("probes over m = 1..%d: constants %s; wrote %s/probes.csv\n", m_max,
              uniform ? "uniform" : "NOT uniform", out.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D thermoviscoelastic simulator and estimate verifier"};
  app.require_subcommand(1);

  std::string config, out = ".", case_id = "trig-constant-coeff", key;
  std::vector<std::string> overrides, values;
  bool temporal = false;
  double horizon = 0.5, p = 1.0, eta = 10.0;
  long long trials = 10000;
  std::uint64_t seed = 7;
  int m_max = 8, n = 256;

  auto* run = app.add_subcommand("run", "simulate and emit CSV output");
  run->add_option("--config", config, "config file")->required();
  run->add_option("--out", out, "output directory");
  run->add_option("--override", overrides, "section.key=value (repeatable)");

  auto* verify = app.add_subcommand("verify", "run and evaluate the estimate ledger");
  verify->add_option("--config", config, "config file")->required();
  verify->add_option("--out", out, "output directory");
  verify->add_option("--override", overrides, "section.key=value (repeatable)");

  auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  mms->add_option("--case", case_id, "trig-constant-coeff | trig-variable-a | degenerate-zero");
  mms->add_option("--out", out, "output directory");
  mms->add_option("--horizon", horizon, "study horizon");
  mms->add_flag("--temporal", temporal, "time-step study instead of spatial");

  auto* sweep = app.add_subcommand("sweep", "run one config across parameter values");
  sweep->add_option("--config", config, "config file")->required();
  sweep->add_option("--key", key, "section.key to vary")->required();
  sweep->add_option("--values", values, "values to sweep")->required();
  sweep->add_option("--out", out, "output directory");

  auto* moser = app.add_subcommand("moser-check", "randomized recursion-inequality trial");
  moser->add_option("--trials", trials, "number of random triples");
  moser->add_option("--seed", seed, "RNG seed");

  auto* probe = app.add_subcommand("probe", "inequality probes over the cosine family");
  probe->add_option("--m-max", m_max, "largest cosine mode");
  probe->add_option("--n", n, "grid resolution");
  probe->add_option("--p", p, "absorption exponent");
  probe->add_option("--eta", eta, "absorption weight");
  probe->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  if (run->parsed()) return cmd_run(config, out, overrides);
  if (verify->parsed()) return cmd_verify(config, out, overrides);
  if (mms->parsed()) return cmd_mms(case_id, out, temporal, horizon);
  if (sweep->parsed()) return cmd_sweep(config, key, values, out);
  if (moser->parsed()) return cmd_moser(trials, seed);
  if (probe->parsed()) return cmd_probe(m_max, n, p, eta, out);
  return kExitConfigError;
}
