/* C interface to the hyperrho shared library.
 *
 * Conventions:
 *   - Every entry point returns an hr_status; HR_OK means success.
 *   - On failure, hr_last_error() returns a thread-local diagnostic message
 *     valid until the next failing call on the same thread.
 *   - Output strings (CSV bodies, JSON documents, summaries) are allocated by
 *     the library and must be released with hr_string_free().
 *   - hr_space is an opaque handle; destroy it with hr_space_destroy().
 */
#ifndef HYPERRHO_H
#define HYPERRHO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hr_space hr_space;

typedef enum {
  HR_OK = 0,
  HR_ERR_INVALID_ARGUMENT = 1,
  HR_ERR_RUNTIME = 2,
  HR_ERR_IO = 3
} hr_status;

const char* hr_version(void);

/* Thread-local message for the most recent failure on this thread. */
const char* hr_last_error(void);

void hr_string_free(char* s);

/* --- spaces --------------------------------------------------------------
 * config examples: "grid1d:256", "grid2d:64,extent=2", "snowflake:512,2",
 * "cantor:9,0.333". */
hr_status hr_space_create(const char* config, hr_space** out);
void hr_space_destroy(hr_space* space);

/* JSON description: kind, size, dim, kappa, eta, ahlfors constants, scales,
 * plus a least-squares Ahlfors fit (eta_hat, a_hat, A_hat) over `fit_radii`
 * log-spaced radii (0 selects a default). */
hr_status hr_space_describe_json(const hr_space* space, int fit_radii,
                                 char** out_json);

/* --- rho tables ----------------------------------------------------------
 * CSV of `triples` seeded random triples. Columns:
 *   x,y,z,x0,x1,x2,y0,y1,y2,z0,z1,z2,rho,witness0,witness1,witness2,L,method */
hr_status hr_rho_table_csv(const hr_space* space, int triples, uint64_t seed,
                           char** out_csv);

/* --- operator application ------------------------------------------------
 * mode "tgamma": exponent is gamma in (0, 2 eta); g_spec required.
 * mode "riesz":  exponent is alpha in (0, eta); g_spec ignored (may be NULL).
 * Function specs: "constant:c", "indicator:a,b", "gaussian:center,width",
 * "random:seed", "cosmix:seed".
 * CSV columns: index,x0,x1,x2,value */
hr_status hr_apply_csv(const hr_space* space, const char* mode, double exponent,
                       const char* f_spec, const char* g_spec, char** out_csv);

/* --- exponent regions ----------------------------------------------------
 * Lattice classification of (0,1)^2 at sigma in (0,1). CSV columns:
 *   r,s,in_omega,in_a,in_b,in_c,chain
 * out_summary_json (optional, may be NULL): lattice and analytic areas,
 * decomposition-check exception count and verdict. */
hr_status hr_region_csv(double sigma, int grid_n, char** out_csv,
                        char** out_summary_json);

/* --- verification suites -------------------------------------------------
 * suite: all|sandwich|lemma11|lemma21|prop32|region|theorem12|search.
 * config_json (optional): overrides of the default trial configuration,
 * including "seed" and "tolerances". out_dir (optional): where report.json
 * and margins.csv are written (created if absent).
 * out_report_json receives the full report body; out_summary a human-readable
 * digest; all_passed is 1 iff every asserted check passed. */
hr_status hr_verify_run(const char* suite, const char* config_json,
                        const char* out_dir, char** out_report_json,
                        char** out_summary, int* all_passed);

/* Re-render a previously produced report body into the human summary. */
hr_status hr_report_summary(const char* report_json, char** out_summary,
                            int* all_passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HYPERRHO_H */
