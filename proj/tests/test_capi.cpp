#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tvk.h"

namespace {

std::string config_dir() {
  const char* d = std::getenv("TVK_CONFIG_DIR");
  return d ? d : "configs";
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

}  // namespace

TEST_CASE("error codes are stable exit-code material") {
  CHECK(TVK_OK == 0);
  CHECK(TVK_ECHECK == 1);
  CHECK(TVK_ECONFIG == 2);
}

TEST_CASE("invalid inputs produce codes and messages") {
  tvk_sim* sim = nullptr;
  CHECK(tvk_sim_create("/no/such/file.cfg", nullptr, 0, &sim) == TVK_ECONFIG);
  CHECK(std::string(tvk_last_error()).find("cannot open") != std::string::npos);
  CHECK(tvk_sim_create(nullptr, nullptr, 0, &sim) == TVK_EINVAL);
  CHECK(tvk_sim_create_scenario("bogus", nullptr, 0, &sim) == TVK_ECONFIG);
  CHECK(tvk_sim_run(nullptr) == TVK_EINVAL);

  // termination before run is a state error
  CHECK(tvk_sim_create_scenario("decoupled", nullptr, 0, &sim) == TVK_OK);
  int d = 0;
  double t = 0.0;
  CHECK(tvk_sim_termination(sim, &d, &t) == TVK_EINVAL);
  char buf[64];
  CHECK(tvk_sim_ledger_text(sim, buf, sizeof buf) == TVK_EINVAL);
  tvk_sim_destroy(sim);
  tvk_sim_destroy(nullptr);  // must be a no-op
}

TEST_CASE("run, outputs, and ledger round trip") {
  const char* overrides[] = {"run.T=0.05", "grid.n=128"};
  tvk_sim* sim = nullptr;
  REQUIRE(tvk_sim_create_scenario("standard", overrides, 2, &sim) == TVK_OK);
  REQUIRE(tvk_sim_run(sim) == TVK_OK);

  int diverged = -1;
  double t_est = -1.0;
  CHECK(tvk_sim_termination(sim, &diverged, &t_est) == TVK_OK);
  CHECK(diverged == 0);

  const std::string snap = tmp_path("tvk_capi_snap.csv");
  const std::string func = tmp_path("tvk_capi_func.csv");
  CHECK(tvk_sim_write_snapshot_csv(sim, snap.c_str()) == TVK_OK);
  CHECK(tvk_sim_write_functionals_csv(sim, func.c_str()) == TVK_OK);
  CHECK(slurp(snap).rfind("t,x,u,v,theta\n", 0) == 0);
  CHECK(slurp(func).rfind("t,mechanical_energy", 0) == 0);

  const std::string led = tmp_path("tvk_capi_ledger.csv");
  int pass = 0;
  CHECK(tvk_sim_verify(sim, led.c_str(), &pass) == TVK_OK);
  CHECK(pass == 1);
  CHECK(slurp(led).rfind("check,anchor,verdict,max_value,bound,margin\n", 0) == 0);

  char buf[8192];
  CHECK(tvk_sim_ledger_text(sim, buf, sizeof buf) == TVK_OK);
  CHECK(std::string(buf).find("overall: pass") != std::string::npos);
  tvk_sim_destroy(sim);
}

TEST_CASE("config files shipped with the repository load") {
  for (const char* name : {"standard.cfg", "standard_static_a.cfg", "decoupled.cfg",
                           "blowup_probe.cfg"}) {
    tvk_sim* sim = nullptr;
    const std::string path = config_dir() + "/" + name;
    CHECK_MESSAGE(tvk_sim_create(path.c_str(), nullptr, 0, &sim) == TVK_OK, path);
    tvk_sim_destroy(sim);
  }
}

TEST_CASE("manufactured study through the C interface") {
  const int ns[] = {16, 32, 64};
  int ok = 0;
  const std::string csv = tmp_path("tvk_capi_conv.csv");
  REQUIRE(tvk_mms_study("degenerate-zero", ns, 3, 0.05, csv.c_str(), &ok) == TVK_OK);
  CHECK(ok == 1);
  CHECK(slurp(csv).rfind("n,dt,err_u,err_v,err_theta", 0) == 0);
  CHECK(tvk_mms_study("bogus-case", ns, 3, 0.05, nullptr, &ok) == TVK_ECONFIG);
}

TEST_CASE("recursion trials through the C interface") {
  long long violations = -1;
  REQUIRE(tvk_moser_trials(2000, 7, &violations) == TVK_OK);
  CHECK(violations == 0);
  CHECK(tvk_moser_trials(0, 7, &violations) == TVK_EINVAL);
}

TEST_CASE("probe table through the C interface") {
  const std::string csv = tmp_path("tvk_capi_probe.csv");
  int uniform = 0;
  REQUIRE(tvk_probe_table(8, 256, 1.0, 10.0, csv.c_str(), &uniform) == TVK_OK);
  CHECK(uniform == 1);
  CHECK(slurp(csv).rfind("m,ehrling_C,gn_ratio\n", 0) == 0);
}

TEST_CASE("parameter sweep through the C interface") {
  const std::string cfg = config_dir() + "/decoupled.cfg";
  const char* values[] = {"0.05", "0.1"};
  const std::string csv = tmp_path("tvk_capi_sweep.csv");
  int all_completed = 0;
  REQUIRE(tvk_sweep(cfg.c_str(), "run.T", values, 2, csv.c_str(), &all_completed) ==
          TVK_OK);
  CHECK(all_completed == 1);
  const std::string body = slurp(csv);
  CHECK(body.rfind("value,termination", 0) == 0);
  CHECK(body.find("completed") != std::string::npos);
}
