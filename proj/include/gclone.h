/*
 * gclone: optimal cloning and amplification of displaced thermal states.
 *
 * C interface to the numerical core. Objects are opaque handles released with
 * the matching *_free function. Every fallible call returns a gclone_status;
 * on failure gclone_last_error() describes the problem for the calling
 * thread. Strings returned through char** are heap-allocated and released with
 * gclone_string_free(). All functions are reentrant; handles are immutable
 * after construction and may be shared across threads.
 */
#ifndef GCLONE_H
#define GCLONE_H

#include <stddef.h>
#include <stdint.h>

#if defined(GCLONE_BUILDING_LIBRARY)
#define GCLONE_API __attribute__((visibility("default")))
#else
#define GCLONE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gclone_status {
  GCLONE_OK = 0,
  GCLONE_ERR_PARAMETER = 1,
  GCLONE_ERR_INDEX = 2,
  GCLONE_ERR_RESOURCE = 3,
  GCLONE_ERR_SOLVER = 4,
  GCLONE_ERR_UNSUPPORTED = 5,
  GCLONE_ERR_IO = 6,
  GCLONE_ERR_INTERNAL = 7
} gclone_status;

typedef enum gclone_format { GCLONE_FORMAT_CSV = 0, GCLONE_FORMAT_JSON = 1, GCLONE_FORMAT_SVG = 2 } gclone_format;

typedef enum gclone_solver_status {
  GCLONE_SOLVER_OPTIMAL = 0,
  GCLONE_SOLVER_FEASIBLE = 1,
  GCLONE_SOLVER_FAILED = 2
} gclone_solver_status;

typedef struct gclone_diag gclone_diag;          /* truncated photon-number law */
typedef struct gclone_gaussian gclone_gaussian;  /* mean + covariance, m modes */
typedef struct gclone_optimum gclone_optimum;    /* result of the idler LP */

GCLONE_API const char* gclone_version(void);
GCLONE_API const char* gclone_last_error(void);
GCLONE_API const char* gclone_status_name(gclone_status status);
GCLONE_API void gclone_string_free(char* str);

/* ---- photon-number distributions ---- */

GCLONE_API gclone_status gclone_diag_thermal(double s, size_t cutoff, gclone_diag** out);
GCLONE_API gclone_status gclone_diag_number(size_t k, size_t cutoff, gclone_diag** out);
/* tail_mass < 0 means "1 - sum(probs)". */
GCLONE_API gclone_status gclone_diag_from_probs(const double* probs, size_t n, double tail_mass, gclone_diag** out);
GCLONE_API gclone_status gclone_diag_from_json(const char* json, gclone_diag** out);
GCLONE_API void gclone_diag_free(gclone_diag* state);

GCLONE_API size_t gclone_diag_size(const gclone_diag* state);
GCLONE_API const double* gclone_diag_probs(const gclone_diag* state);
GCLONE_API double gclone_diag_tail_mass(const gclone_diag* state);
GCLONE_API gclone_status gclone_diag_to_json(const gclone_diag* state, char** json);

GCLONE_API size_t gclone_default_cutoff(double ratio_max, double tail);
GCLONE_API gclone_status gclone_l1_distance(const gclone_diag* p, const gclone_diag* q, double* value,
                                            double* uncertainty);
GCLONE_API gclone_status gclone_cdf(const gclone_diag* p, size_t m, double* out);
GCLONE_API gclone_status gclone_stochastically_dominated(const gclone_diag* p, const gclone_diag* q, double tol,
                                                         int* out);

/* ---- amplifier channel ---- */

GCLONE_API gclone_status gclone_output_vacuum_input(const gclone_diag* idler, double gain, size_t cutoff,
                                                    gclone_diag** out);
GCLONE_API gclone_status gclone_output_thermal_input(double s, const gclone_diag* idler, double gain, size_t cutoff,
                                                     gclone_diag** out);
GCLONE_API gclone_status gclone_loss_channel(const gclone_diag* tau, double eta, gclone_diag** out);
GCLONE_API gclone_status gclone_cdf_identity(size_t k, size_t m, double gamma, double* out);
GCLONE_API gclone_status gclone_two_mode_squeezer_oracle(const gclone_diag* input, const gclone_diag* idler,
                                                         double gain, size_t cutoff, gclone_diag** out);

/* ---- figures of merit ---- */

typedef struct gclone_merit_row {
  double s;
  int m0;
  double delta_clon;
  double delta_numeric;
  double delta_uncertainty;
  double wigner_l1;
  double classical;
} gclone_merit_row;

GCLONE_API gclone_status gclone_crossing_index(double s, double gain, int* out);
GCLONE_API gclone_status gclone_delta_clon(double s, double* out);
GCLONE_API gclone_status gclone_delta_amp(double s, double gain, double* out);
GCLONE_API gclone_status gclone_wigner_variances(double s, double* v_input, double* v_amplified);
GCLONE_API gclone_status gclone_gaussian_l1(double v1, double v2, double* out);
GCLONE_API gclone_status gclone_classical_deficiency(double v, double* out);

/* rows must hold n entries; filled in grid order. */
GCLONE_API gclone_status gclone_merit_sweep(const double* s_grid, size_t n, unsigned jobs, gclone_merit_row* rows);
GCLONE_API gclone_status gclone_merit_format(const gclone_merit_row* rows, size_t n, gclone_format format,
                                             char** text);

GCLONE_API gclone_status gclone_optimize_idler(double s, double gain, size_t max_idler, size_t cutoff,
                                               gclone_optimum** out);
GCLONE_API void gclone_optimum_free(gclone_optimum* opt);
GCLONE_API const gclone_diag* gclone_optimum_tau(const gclone_optimum* opt);
GCLONE_API double gclone_optimum_delta(const gclone_optimum* opt);
GCLONE_API double gclone_optimum_gap(const gclone_optimum* opt);
GCLONE_API gclone_solver_status gclone_optimum_status(const gclone_optimum* opt);
GCLONE_API gclone_status gclone_optimum_to_json(const gclone_optimum* opt, char** json);

/* ---- Gaussian states ---- */

GCLONE_API gclone_status gclone_gaussian_displaced_thermal(double alpha_re, double alpha_im, double s,
                                                           gclone_gaussian** out);
GCLONE_API gclone_status gclone_clone_pipeline(size_t n, size_t m, double alpha_re, double alpha_im, double s,
                                               gclone_gaussian** out);
/* Single-mode state right after the amplifier stage of the pipeline. */
GCLONE_API gclone_status gclone_clone_pipeline_amplified(size_t n, size_t m, double alpha_re, double alpha_im,
                                                         double s, gclone_gaussian** out);
GCLONE_API gclone_status gclone_gaussian_from_json(const char* json, gclone_gaussian** out);
GCLONE_API void gclone_gaussian_free(gclone_gaussian* state);

GCLONE_API size_t gclone_gaussian_modes(const gclone_gaussian* state);
/* 2*modes entries, (q0, p0, q1, p1, ...). */
GCLONE_API const double* gclone_gaussian_mean(const gclone_gaussian* state);
/* (2*modes)^2 entries, column-major (symmetric, so row-major reads the same). */
GCLONE_API const double* gclone_gaussian_cov(const gclone_gaussian* state);
GCLONE_API gclone_status gclone_gaussian_marginal(const gclone_gaussian* state, size_t mode, gclone_gaussian** out);
GCLONE_API gclone_status gclone_gaussian_min_symplectic_eigenvalue(const gclone_gaussian* state, double* out);
GCLONE_API gclone_status gclone_gaussian_thermal_fit(const gclone_gaussian* state, double* s_eff, double* alpha_re,
                                                     double* alpha_im);
GCLONE_API gclone_status gclone_gaussian_to_json(const gclone_gaussian* state, char** json);

/* ---- verification suites ---- */

/* suites: comma-separated names, NULL or "" for all. *all_passed is set to 1
 * when every selected suite passes. The JSON report records the seed. */
GCLONE_API gclone_status gclone_verify(const char* suites, uint64_t seed, size_t trials, double tol,
                                       char** report_json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* GCLONE_H */
