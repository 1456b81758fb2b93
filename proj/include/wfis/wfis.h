#ifndef WFIS_H
#define WFIS_H

/*
 * C interface to the wfis library: urn seasons with indirect selection,
 * their large-population limits, the resulting Wright-Fisher chain and its
 * diffusion approximation.
 *
 * Every function returns a wfis_status. On failure the outputs are left
 * untouched and wfis_last_error() describes the problem (thread-local,
 * valid until the next failing call on the same thread). Objects created
 * by the library are released with the matching *_free function; passing
 * NULL to a *_free function is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WFIS_BUILDING)
#    define WFIS_API __declspec(dllexport)
#  else
#    define WFIS_API __declspec(dllimport)
#  endif
#else
#  define WFIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wfis_status {
  WFIS_OK = 0,
  WFIS_ERR_DOMAIN = 1,       /* argument outside the domain of the operation */
  WFIS_ERR_OUT_OF_RANGE = 2, /* lookup outside a table */
  WFIS_ERR_DEGENERATE = 3,   /* empty urn, no draws, empty region */
  WFIS_ERR_INFEASIBLE = 4,   /* request exceeds a size limit */
  WFIS_ERR_NULL_ARG = 5,
  WFIS_ERR_ALLOC = 6,
  WFIS_ERR_INTERNAL = 7
} wfis_status;

WFIS_API const char* wfis_version(void);
WFIS_API const char* wfis_last_error(void);
WFIS_API const char* wfis_status_name(wfis_status status);

typedef struct wfis_estimate {
  double value;
  double std_error;
  uint64_t n_samples;
} wfis_estimate;

/* ---- exact season probabilities ------------------------------------- */

typedef enum wfis_q_kind { WFIS_Q = 0, WFIS_Q_TILDE = 1 } wfis_q_kind;

WFIS_API wfis_status wfis_exact_q(int64_t w, int64_t b, int64_t f, double* out);
WFIS_API wfis_status wfis_exact_q_tilde(int64_t w, int64_t b, int64_t f, double* out);

/* has_* flags are set to 0 when the urn lacks the balls a component refers to. */
WFIS_API wfis_status wfis_repro_probs(int64_t w, int64_t b, int64_t f, double* p_w,
                                      int* has_p_w, double* p_b, int* has_p_b);

/* out and has are ordered (p_ww, p_wb, p_bb). */
WFIS_API wfis_status wfis_pair_probs(int64_t w, int64_t b, int64_t f, double out[3],
                                     int has[3]);

typedef struct wfis_moments {
  double mean_x;
  double mean_y;
  double var_x;
  double var_y;
  double cov_xy;
} wfis_moments;

WFIS_API wfis_status wfis_season_moments(int64_t w, int64_t b, int64_t f, wfis_moments* out);

typedef struct wfis_qtable wfis_qtable;

/* Full table for w + b + f <= max_n (max_n at most 512). */
WFIS_API wfis_status wfis_qtable_build(wfis_q_kind kind, int64_t max_n, unsigned jobs,
                                       wfis_qtable** out);
WFIS_API void wfis_qtable_free(wfis_qtable* table);
WFIS_API int64_t wfis_qtable_max_n(const wfis_qtable* table);
WFIS_API wfis_status wfis_qtable_value(const wfis_qtable* table, int64_t w, int64_t b,
                                       int64_t f, double* out);
WFIS_API wfis_status wfis_qtable_finite_diffs(const wfis_qtable* table, int64_t w, int64_t b,
                                              int64_t f, double* dx, double* dy);

/* Called for every (w, b, f) with w + b + f <= max_n, layer by layer in f,
 * then w, then b. A nonzero return stops the sweep early. */
typedef int (*wfis_table_visitor)(void* user, int64_t w, int64_t b, int64_t f, double value);

WFIS_API wfis_status wfis_sweep_table(wfis_q_kind kind, int64_t max_n, unsigned jobs,
                                      wfis_table_visitor visit, void* user);

/* ---- season Monte Carlo --------------------------------------------- */

WFIS_API wfis_status wfis_simulate_season(int64_t w, int64_t b, int64_t f, uint64_t seed,
                                          uint64_t stream, int64_t* x_count, int64_t* y_count);

/* x_counts and y_counts hold reps entries each. */
WFIS_API wfis_status wfis_simulate_seasons(int64_t w, int64_t b, int64_t f, uint64_t reps,
                                           uint64_t seed, unsigned jobs, int64_t* x_counts,
                                           int64_t* y_counts);

WFIS_API wfis_status wfis_simulate_coupled(int64_t w, int64_t b, int64_t f, uint64_t seed,
                                           uint64_t stream, int* red_drawn_1,
                                           int* red_drawn_2);

/* counts[2 * i + j]: runs where urn 1 drew red (i) and urn 2 drew red (j). */
WFIS_API wfis_status wfis_count_coupled(int64_t w, int64_t b, int64_t f, uint64_t reps,
                                        uint64_t seed, unsigned jobs, uint64_t counts[4]);

WFIS_API wfis_status wfis_estimate_probs(int64_t w, int64_t b, int64_t f, uint64_t reps,
                                         uint64_t seed, unsigned jobs, wfis_estimate* p_w,
                                         wfis_estimate* p_b);

typedef struct wfis_tail_row {
  double d;
  double bound_x;
  double bound_y;
  wfis_estimate tail_x;
  wfis_estimate tail_y;
  int violated_x;
  int violated_y;
} wfis_tail_row;

/* rows holds count entries. */
WFIS_API wfis_status wfis_tail_check(int64_t w, int64_t b, int64_t f, uint64_t reps,
                                     const double* thresholds, size_t count, uint64_t seed,
                                     unsigned jobs, wfis_tail_row* rows);

/* ---- limits ----------------------------------------------------------- */

typedef struct wfis_limit_eval {
  double T;
  double u;
  double v;
  double grad_T[3];
  double grad_u[3];
  double grad_v[3];
} wfis_limit_eval;

/* tol <= 0 selects the default tolerance 1e-13. */
WFIS_API wfis_status wfis_solve_T(double x, double y, double z, double tol, double* out);
WFIS_API wfis_status wfis_eval_limit(double x, double y, double z, wfis_limit_eval* out);
WFIS_API wfis_status wfis_eval_u_tilde(double x, double y, double z, double* out);

typedef struct wfis_vs_eval {
  double s;
  double x;
  double v_s;
  double v_s_prime;
  double v_s_second;
} wfis_vs_eval;

WFIS_API wfis_status wfis_eval_vs(double s, double x, wfis_vs_eval* out);

typedef struct wfis_vs_bounds {
  double v_lo, v_hi;
  double prime_lo, prime_hi;
  double second_lo, second_hi;
} wfis_vs_bounds;

WFIS_API wfis_status wfis_vs_bounds_for(double s, wfis_vs_bounds* out);

WFIS_API wfis_status wfis_diffusion_coeffs(double s, double x, double beta, double* a,
                                           double* b);
WFIS_API wfis_status wfis_classical_coeffs(double x, double beta, double* a, double* b);

/* ---- chains ------------------------------------------------------------- */

typedef enum wfis_model { WFIS_MODEL_INDIRECT = 0, WFIS_MODEL_CLASSICAL = 1 } wfis_model;

/* Selection increment beta/n (per males) or beta/((1+s) n) (per total). */
typedef enum wfis_selection_scale {
  WFIS_SCALE_PER_MALES = 0,
  WFIS_SCALE_PER_TOTAL = 1
} wfis_selection_scale;

typedef struct wfis_chain_config {
  int64_t n;
  double s;
  double beta;
  double x0;
  int64_t generations;
  uint64_t seed;
  wfis_selection_scale scale;
  wfis_model model;
} wfis_chain_config;

WFIS_API void wfis_chain_config_init(wfis_chain_config* cfg);

/* One generation from `whites` whites, drawing from stream (cfg->seed, stream). */
WFIS_API wfis_status wfis_chain_step(const wfis_chain_config* cfg, int64_t whites,
                                     uint64_t stream, int64_t* out);

typedef struct wfis_trajectory wfis_trajectory;

WFIS_API wfis_status wfis_run_chain(const wfis_chain_config* cfg, uint64_t stream,
                                    wfis_trajectory** out);
WFIS_API void wfis_trajectory_free(wfis_trajectory* traj);
WFIS_API size_t wfis_trajectory_length(const wfis_trajectory* traj);
/* White counts for generations 0..length-1. */
WFIS_API const int64_t* wfis_trajectory_counts(const wfis_trajectory* traj);
/* Returns 1 and fills the outputs if the chain hit 0 or n, else 0. */
WFIS_API int wfis_trajectory_absorbed(const wfis_trajectory* traj, int64_t* generation,
                                      int* boundary);

/* ---- diffusion ------------------------------------------------------------ */

typedef struct wfis_sde_config {
  double s;
  double beta;
  double x0;
  double dt;
  double t_end;
  uint64_t seed;
  wfis_model model;
} wfis_sde_config;

WFIS_API void wfis_sde_config_init(wfis_sde_config* cfg);

typedef struct wfis_sde_path wfis_sde_path;

WFIS_API wfis_status wfis_em_simulate(const wfis_sde_config* cfg, uint64_t stream,
                                      wfis_sde_path** out);
WFIS_API void wfis_sde_path_free(wfis_sde_path* path);
WFIS_API size_t wfis_sde_path_length(const wfis_sde_path* path);
WFIS_API const double* wfis_sde_path_times(const wfis_sde_path* path);
WFIS_API const double* wfis_sde_path_values(const wfis_sde_path* path);
WFIS_API int wfis_sde_path_absorbed(const wfis_sde_path* path, double* time, int* boundary);
WFIS_API int wfis_sde_path_boundary_validated(const wfis_sde_path* path);

typedef struct wfis_time_moments {
  double t;
  wfis_estimate mean;
  wfis_estimate variance;
} wfis_time_moments;

/* out holds count entries. */
WFIS_API wfis_status wfis_path_moments(const wfis_sde_config* cfg, uint64_t reps,
                                       const double* t_grid, size_t count, unsigned jobs,
                                       wfis_time_moments* out);

/* ---- verification experiments ------------------------------------------- */

typedef enum wfis_region_kind { WFIS_REGION_Y0 = 0, WFIS_REGION_S = 1 } wfis_region_kind;

typedef enum wfis_rate_target {
  WFIS_TARGET_Q_VS_U = 0,
  WFIS_TARGET_DXQ_VS_UX = 1,
  WFIS_TARGET_DYQ_VS_UY = 2,
  WFIS_TARGET_QTILDE_VS_U2 = 3,
  WFIS_TARGET_FITNESS_GAP = 4
} wfis_rate_target;

#define WFIS_TARGET_COUNT 5

WFIS_API const char* wfis_target_name(wfis_rate_target target);
WFIS_API wfis_status wfis_parse_target(const char* name, wfis_rate_target* out);

WFIS_API wfis_status wfis_region_contains(wfis_region_kind kind, double param, double x,
                                          double y, double z, int* inside);

typedef struct wfis_sweep_options {
  unsigned jobs;
  int64_t max_n;
  int64_t full_limit;
} wfis_sweep_options;

WFIS_API void wfis_sweep_options_init(wfis_sweep_options* opts);

typedef struct wfis_rate_row {
  int64_t n;
  double sup_error;
  int64_t arg_w;
  int64_t arg_b;
  int64_t arg_f;
  uint64_t points;
  double coverage;
} wfis_rate_row;

typedef struct wfis_rate_fit {
  wfis_rate_target target;
  double slope;
  double intercept;
  double r2;
  int nonincreasing;
} wfis_rate_fit;

/* Collection of rate tables, one per requested target. */
typedef struct wfis_rate_tables wfis_rate_tables;

WFIS_API wfis_status wfis_rate_sweep(wfis_region_kind kind, double param, const int64_t* ns,
                                     size_t n_count, const wfis_rate_target* targets,
                                     size_t target_count, const wfis_sweep_options* opts,
                                     wfis_rate_tables** out);
WFIS_API void wfis_rate_tables_free(wfis_rate_tables* tables);
WFIS_API size_t wfis_rate_tables_count(const wfis_rate_tables* tables);
WFIS_API wfis_status wfis_rate_tables_fit(const wfis_rate_tables* tables, size_t index,
                                          wfis_rate_fit* out);
WFIS_API size_t wfis_rate_tables_rows(const wfis_rate_tables* tables, size_t index);
WFIS_API wfis_status wfis_rate_tables_row(const wfis_rate_tables* tables, size_t index,
                                          size_t row, wfis_rate_row* out);

typedef struct wfis_infinitesimal_config {
  const int64_t* ns;
  size_t n_count;
  const double* xs;
  size_t x_count;
  double s;
  const double* betas;
  size_t beta_count;
  uint64_t reps;
  uint64_t seed;
  wfis_selection_scale scale;
  unsigned jobs;
} wfis_infinitesimal_config;

typedef struct wfis_coefficient_check {
  wfis_estimate estimate;
  double reference;
  double error;
  double envelope_c;
  double allowance;
  int within;
} wfis_coefficient_check;

typedef struct wfis_infinitesimal_cell {
  int64_t n;
  double x;
  double beta;
  wfis_coefficient_check drift;
  wfis_coefficient_check variance;
  int has_shift;
  wfis_estimate shift;
  double shift_reference;
  int shift_within;
  int drift_error_decreasing;
} wfis_infinitesimal_cell;

typedef struct wfis_infinitesimal_report wfis_infinitesimal_report;

WFIS_API wfis_status wfis_infinitesimal_check(const wfis_infinitesimal_config* cfg,
                                              wfis_infinitesimal_report** out);
WFIS_API void wfis_infinitesimal_report_free(wfis_infinitesimal_report* report);
WFIS_API size_t wfis_infinitesimal_report_cells(const wfis_infinitesimal_report* report);
WFIS_API wfis_status wfis_infinitesimal_report_cell(const wfis_infinitesimal_report* report,
                                                    size_t index, wfis_infinitesimal_cell* out);
WFIS_API int wfis_infinitesimal_report_passed(const wfis_infinitesimal_report* report);

typedef struct wfis_compare_config {
  int64_t n;
  double s;
  double beta;
  double x0;
  double t;
  uint64_t reps;
  uint64_t seed;
  double dt;
  wfis_model model;
  wfis_selection_scale scale;
  unsigned jobs;
} wfis_compare_config;

WFIS_API void wfis_compare_config_init(wfis_compare_config* cfg);

typedef struct wfis_moment_comparison {
  wfis_estimate chain;
  wfis_estimate diffusion;
  double difference;
  double tolerance;
  int agrees;
} wfis_moment_comparison;

typedef struct wfis_compare_report {
  int64_t generations;
  wfis_moment_comparison mean;
  wfis_moment_comparison variance;
  int boundary_validated;
  int passed;
} wfis_compare_report;

WFIS_API wfis_status wfis_chain_vs_diffusion(const wfis_compare_config* cfg,
                                             wfis_compare_report* out);

#ifdef __cplusplus
}
#endif

#endif /* WFIS_H */
