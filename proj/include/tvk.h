/* C interface to the thermoviscoelastic Kelvin-Voigt simulator.
 *
 * All functions return TVK_OK on success. On failure they return a nonzero
 * code and tvk_last_error() describes the problem (thread-local). Opaque
 * handles own their resources and must be released with the matching
 * destroy call. A diverged simulation is a result, not an error.
 */
#ifndef TVK_H
#define TVK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  TVK_OK = 0,
  TVK_ECHECK = 1,  /* a verification check failed */
  TVK_ECONFIG = 2, /* configuration / input error */
  TVK_EIO = 3,     /* file I/O error */
  TVK_EINVAL = 4   /* invalid argument or handle state */
};

typedef struct tvk_sim tvk_sim;

const char* tvk_last_error(void);

/* Creates a simulation from a config file; overrides are "section.key=value"
 * strings applied on top of the file (may be NULL when n_overrides == 0). */
int tvk_sim_create(const char* config_path, const char* const* overrides,
                   int n_overrides, tvk_sim** out);

/* Same, but from a built-in scenario name
 * ("standard", "standard_static_a", "decoupled", "alpha09"). */
int tvk_sim_create_scenario(const char* scenario, const char* const* overrides,
                            int n_overrides, tvk_sim** out);

void tvk_sim_destroy(tvk_sim* sim);

/* Advances the simulation to its horizon (or to divergence). */
int tvk_sim_run(tvk_sim* sim);

/* After a run: diverged flag and the threshold-crossing time estimate. */
int tvk_sim_termination(const tvk_sim* sim, int* diverged, double* t_est);

int tvk_sim_write_snapshot_csv(const tvk_sim* sim, const char* path);
int tvk_sim_write_functionals_csv(const tvk_sim* sim, const char* path);

/* Evaluates the full estimate ledger. overall_pass gets 1/0; the CSV path
 * may be NULL to skip the report file. Returns TVK_OK even when the
 * verdict is fail; the verdict is data, not an error. */
int tvk_sim_verify(tvk_sim* sim, const char* ledger_csv_path, int* overall_pass);

/* Plain-text ledger summary (requires a prior verify); truncates to buflen. */
int tvk_sim_ledger_text(const tvk_sim* sim, char* buf, size_t buflen);

/* Manufactured-solution convergence study; resolutions must double.
 * orders_ok gets 1 iff the finest observed spatial orders lie in [1.8, 2.2]
 * for all three fields (or the case is exact to round-off). */
int tvk_mms_study(const char* case_id, const int* resolutions, int count,
                  double horizon, const char* csv_path, int* orders_ok);

/* Time-step refinement study at fixed resolution; order target [0.9, 1.1]. */
int tvk_mms_temporal(const char* case_id, int n, const double* dts, int count,
                     double horizon, const char* csv_path, int* order_ok);

/* Randomized trial of the power-iteration recursion property; returns the
 * number of conclusion violations among premise-satisfying triples. */
int tvk_moser_trials(long long trials, unsigned long long seed,
                     long long* violations);

/* Interpolation/absorption inequality probes over the cosine family
 * m = 1..m_max. uniform_ok gets 1 iff every value stays within twice its
 * m=1 value. CSV columns: m,ehrling_C,gn_ratio. */
int tvk_probe_table(int m_max, int grid_n, double p, double eta,
                    const char* csv_path, int* uniform_ok);

/* Runs the config once per value of the given key (parallel), appending a
 * one-line summary per run to out_csv. all_completed gets 1 iff no run
 * diverged. */
int tvk_sweep(const char* config_path, const char* key,
              const char* const* values, int count, const char* out_csv,
              int* all_completed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TVK_H */
