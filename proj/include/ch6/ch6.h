/* Public C interface of the ch6 solver library.
 *
 * Every object is an opaque handle created and destroyed through this API.
 * Functions return CH6_OK (0) or a negative error code; the per-thread
 * message behind the most recent failure is available from ch6_last_error().
 * Output parameters may be NULL when the caller does not need the value,
 * unless stated otherwise.  Real fields are stored row major over a periodic
 * cube of n grid points per axis.
 */

#ifndef CH6_H
#define CH6_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  CH6_OK = 0,
  CH6_E_ARG = -1,      /* NULL handle or out-of-range argument */
  CH6_E_CONFIG = -2,   /* malformed configuration, key or file content */
  CH6_E_DOMAIN = -3,   /* mathematically invalid request */
  CH6_E_IO = -4,       /* file system failure */
  CH6_E_BLOWUP = -5,   /* the evolved state stopped being finite */
  CH6_E_INTERNAL = -6
};

typedef struct ch6_grid ch6_grid;
typedef struct ch6_field ch6_field;
typedef struct ch6_params ch6_params;
typedef struct ch6_config ch6_config;
typedef struct ch6_table ch6_table;

const char* ch6_version(void);
/* Message of the most recent failure on this thread; empty, never NULL. */
const char* ch6_last_error(void);

/* -------------------------------------------------------------- grid */

/* dim in 1..3, n even and >= 4, length > 0. */
int ch6_grid_create(int dim, int n, double length, ch6_grid** out);
void ch6_grid_destroy(ch6_grid* g);
int ch6_grid_info(const ch6_grid* g, int* dim, int* n, double* length);
/* Number of real samples, n^dim; 0 on NULL. */
size_t ch6_grid_point_count(const ch6_grid* g);

/* ------------------------------------------------------------- field */

int ch6_field_create(const ch6_grid* g, ch6_field** out); /* zero filled */
int ch6_field_clone(const ch6_field* f, ch6_field** out);
void ch6_field_destroy(ch6_field* f);
int ch6_field_size(const ch6_field* f, size_t* count);
int ch6_field_grid_info(const ch6_field* f, int* dim, int* n, double* length);
/* Borrowed pointer into the sample buffer, valid until the next call on f. */
int ch6_field_data(ch6_field* f, double** out);
int ch6_field_copy_in(ch6_field* f, const double* src, size_t count);
int ch6_field_copy_out(const ch6_field* f, double* dst, size_t count);
int ch6_field_mean(const ch6_field* f, double* out);
int ch6_field_max_abs(const ch6_field* f, double* out);
/* Self-describing binary snapshot; load recreates the grid from the file. */
int ch6_field_save(const ch6_field* f, const char* path);
int ch6_field_load(const char* path, ch6_field** out);

/* ------------------------------------------------------------ params */

int ch6_params_gompper_schick(double delta, double g0, double g2, double h0,
                              double mobility, ch6_params** out);
int ch6_params_pawlow(double delta, double alpha, double mobility, ch6_params** out);
void ch6_params_destroy(ch6_params* p);
/* Derivative-coefficient splitting used for g0 of either sign:
 * kappa0 - kappa1 * kappa2^2 == g0 with kappa0 > 0. */
int ch6_params_kappa(const ch6_params* p, double* kappa0, double* kappa1, double* kappa2);
int ch6_map_parameters(double g0, double g2, double* kappa0, double* kappa1,
                       double* kappa2);
/* Pointwise constitutive functions: which is one of
 * "f", "fprime", "a", "aprime", "W". */
int ch6_constitutive(const ch6_params* p, const char* which, double s, double* out);

/* ----------------------------------------------- norms and operators */

/* p >= 1 or HUGE_VAL for the sup norm. */
int ch6_norm_lp(const ch6_field* f, double p, double* out);
/* Sobolev norm of order s; homogeneous drops the zero mode.  With strict
 * nonzero, a negative order on data with nonzero mean is an error instead of
 * an implicit projection. */
int ch6_norm_sobolev(const ch6_field* f, double s, int homogeneous, int strict,
                     double* out);
/* L2 norm of the order-th derivative tensor (order 0 gives the L2 norm). */
int ch6_norm_grad(const ch6_field* f, int order, double* out);
int ch6_apply_fractional(ch6_field* f, double alpha, int strict);
int ch6_apply_derivative(ch6_field* f, int axis, int order);
/* Two-thirds rule spectral truncation, in place. */
int ch6_dealias_field(ch6_field* f);

/* ------------------------------------------------------------- model */

int ch6_chemical_potential(const ch6_field* u, const ch6_params* p, ch6_field** mu);
int ch6_nonlinear_rhs(const ch6_field* u, const ch6_params* p, ch6_field** out);
int ch6_free_energy(const ch6_field* u, const ch6_params* p, double* out);
/* Relative spectral distance between the two published forms of the right
 * hand side; identically small for consistent parameters. */
int ch6_formulation_residual(const ch6_field* u, const ch6_params* p, double* out);
/* exp(-mobility (delta k^6 + kappa0 k^4) dt); NaN on invalid arguments. */
double ch6_linear_propagator(double k_magnitude, const ch6_params* p, double dt);

/* ---------------------------------------------------------- stepping */

/* Advances u in place by nsteps integrating-factor steps of size dt.
 * scheme is "ifrk4" or "ifeuler".  Returns CH6_E_BLOWUP when the state
 * stops being finite; u then holds the last finite state. */
int ch6_step(ch6_field* u, const ch6_params* p, const char* scheme, double dt,
             int nsteps, int dealias, int oversample);

typedef struct ch6_evolve_opts {
  const char* scheme;  /* "ifrk4" (default when NULL) or "ifeuler" */
  double dt;           /* <= 0 selects the stability rule */
  double cfl;          /* <= 0 means 0.5 */
  int dealias;         /* nonzero enables the two-thirds rule (recommended) */
  int linear_only;
  int oversample;
  double t_end;        /* > 0 */
  double cadence;      /* diagnostics interval, in (0, t_end] */
  int max_grad_order;  /* < 0 means 3 */
  double neg_s;        /* <= 0 means 0.5 */
  int with_energy;     /* record free energy and the dissipation rate */
} ch6_evolve_opts;

/* Runs the flow and collects one diagnostics row per cadence tick.  On
 * CH6_E_BLOWUP the rows gathered so far and the last state are still
 * returned when the output pointers are non-NULL. */
int ch6_evolve(const ch6_field* u0, const ch6_params* p, const ch6_evolve_opts* opts,
               ch6_table** diagnostics, ch6_field** u_final);

/* State of the fourth-order heat flow v_t = -lap^2 v at time t from u0. */
int ch6_heat_baseline(const ch6_field* u0, double t, ch6_field** out);

/* ------------------------------------------------------- fixed point */

/* Linearized fixed-point iteration on [0, t1].  ratios receives up to
 * jmax - 1 successive contraction factors (ratios_cap may be 0 with
 * ratios NULL); contraction and degenerate are boolean flags. */
int ch6_picard(const ch6_field* u0, const ch6_params* p, double t1, int jmax,
               int inner_steps, int dealias, double* ratios, size_t ratios_cap,
               size_t* n_ratios, int* contraction, int* degenerate);

/* -------------------------------------------------------- decay fits */

/* Least-squares exponent of value ~ (1 + t)^{-sigma} on t in [t1, t2]. */
int ch6_fit_decay(const double* t, const double* value, size_t count, double t1,
                  double t2, double* sigma_hat, double* r2, int* samples);
/* Same fit on a named column of a diagnostics CSV file. */
int ch6_fit_csv(const char* path, const char* column, double t1, double t2,
                double* sigma_hat, double* r2, int* samples);
int ch6_decay_window(double cadence, double box_length, double kappa0, double* t1,
                     double* t2);

/* Ratio ||D^l u|| / (||D^{-s} u||^theta ||D^{l+k} u||^{1-theta}) with
 * theta = k / (l + k + s); bounded by 1 for every nonzero field. */
int ch6_interpolation_ratio(const ch6_field* f, double l, double k, double s,
                            double* ratio);

/* ------------------------------------------------------------- table */

void ch6_table_destroy(ch6_table* t);
size_t ch6_table_rows(const ch6_table* t);
size_t ch6_table_cols(const ch6_table* t);
/* Borrowed column name, NULL when col is out of range. */
const char* ch6_table_column_name(const ch6_table* t, size_t col);
int ch6_table_find_column(const ch6_table* t, const char* name, size_t* col);
int ch6_table_cell(const ch6_table* t, size_t row, size_t col, double* out);

/* ------------------------------------------------------------ config */

int ch6_config_create(ch6_config** out); /* built-in defaults */
int ch6_config_load(const char* path, ch6_config** out);
void ch6_config_destroy(ch6_config* c);
/* Raw assignment; validation happens in validate/render/run. */
int ch6_config_set(ch6_config* c, const char* key, const char* value);
/* Resolved value of one key.  needed receives the full length (without the
 * terminator); the copy is truncated to cap - 1 characters. */
int ch6_config_get(const ch6_config* c, const char* key, char* buf, size_t cap,
                   size_t* needed);
int ch6_config_validate(const ch6_config* c);
/* Canonical key = value rendering of the resolved configuration. */
int ch6_config_render(const ch6_config* c, char* buf, size_t cap, size_t* needed);

/* ---------------------------------------------------------- scenario */

/* Runs the configured scenario, writing its artifacts (config_resolved.cfg,
 * summary.txt, CSV and snapshot files) under the output directory.
 * out_dir overrides the configured one when non-NULL.  scenario_exit
 * receives 0 when every check passed, 1 when a check failed and 3 on
 * blow-up; checks_passed is the matching boolean. */
int ch6_run_scenario(const ch6_config* c, const char* out_dir, int* scenario_exit,
                     int* checks_passed);

/* Initial data described by the init.* keys of the configuration, on the
 * configured grid. */
int ch6_initial_data(const ch6_config* c, ch6_field** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CH6_H */
