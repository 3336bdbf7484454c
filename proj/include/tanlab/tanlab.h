/*
 * tanlab: numerical laboratory for the tangent family f(z) = lambda * tan(z).
 *
 * C interface over opaque handles. Every fallible call returns a tl_status;
 * on failure tl_last_error() describes the problem for the calling thread.
 * Strings and buffers returned through out-parameters are owned by the
 * caller and released with tl_string_free / tl_buffer_free.
 */
#ifndef TANLAB_TANLAB_H_
#define TANLAB_TANLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TANLAB_API __declspec(dllexport)
#else
#define TANLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_ERR_INVALID_ARGUMENT = 1,
  TL_ERR_OMITTED_VALUE = 2,
  TL_ERR_CLEARANCE_VIOLATION = 3,
  TL_ERR_LIFT_DIVERGENCE = 4,
  TL_ERR_INVALID_RADIUS = 5,
  TL_ERR_DEGENERATE_MOEBIUS = 6,
  TL_ERR_RATIONAL_INPUT = 7,
  TL_ERR_RESONANT_MULTIPLIER = 8,
  TL_ERR_INSUFFICIENT_DATA = 9,
  TL_ERR_SERIES_DIVERGENCE = 10,
  TL_ERR_ORBIT_ESCAPED = 11,
  TL_ERR_IO_FAILURE = 12,
  TL_ERR_INTERNAL = 13
} tl_status;

typedef struct tl_complex {
  double re;
  double im;
} tl_complex;

/* A point of the Riemann sphere; value is ignored when infinite != 0. */
typedef struct tl_ext_complex {
  tl_complex value;
  int infinite;
} tl_ext_complex;

/* z -> (a z + b) / (c z + d) */
typedef struct tl_moebius {
  tl_complex a, b, c, d;
} tl_moebius;

/* z -> alpha z + beta */
typedef struct tl_linear {
  tl_complex alpha, beta;
} tl_linear;

TANLAB_API const char* tl_version(void);
TANLAB_API const char* tl_status_name(tl_status status);
TANLAB_API const char* tl_last_error(void);
/* Numeric detail of the last failure: the degree n for TL_ERR_RESONANT_MULTIPLIER,
 * the nearest approach for TL_ERR_CLEARANCE_VIOLATION, 0 otherwise. */
TANLAB_API double tl_last_error_detail(void);
TANLAB_API void tl_string_free(char* s);
TANLAB_API void tl_buffer_free(unsigned char* data);

/* ---- tangent map ------------------------------------------------------ */

typedef struct tl_map tl_map;

TANLAB_API tl_status tl_map_create(tl_complex lambda, tl_map** out);
TANLAB_API void tl_map_destroy(tl_map* map);
TANLAB_API tl_complex tl_map_lambda(const tl_map* map);

/* *is_pole is set to 1 (and *value left untouched) within pole tolerance. */
TANLAB_API tl_status tl_evaluate(const tl_map* map, tl_complex z, tl_complex* value, int* is_pole);
TANLAB_API tl_status tl_derivative(const tl_map* map, tl_complex z, tl_complex* value, int* is_pole);
/* out[0] = i*lambda, out[1] = -i*lambda */
TANLAB_API tl_status tl_asymptotic_values(const tl_map* map, tl_complex out[2]);
TANLAB_API tl_status tl_decompose(const tl_map* map, tl_moebius* m, tl_linear* a);
TANLAB_API tl_status tl_inverse_branch(const tl_map* map, tl_complex w, long k, tl_complex* out);
TANLAB_API tl_status tl_line_image_circle(const tl_map* map, double R, int upper, tl_complex* center,
                                          double* radius);
TANLAB_API tl_status tl_halfplane_radius_for_disk(const tl_map* map, double r, double* R);
/* out[0] = M(0), out[1] = M(inf) */
TANLAB_API tl_status tl_normal_form_singular_values(tl_moebius m, tl_linear a, tl_ext_complex out[2]);

/* ---- polylines and curve lifting -------------------------------------- */

typedef struct tl_polyline tl_polyline;

TANLAB_API tl_status tl_polyline_create(const tl_complex* points, size_t count, int closed,
                                        tl_polyline** out);
/* Rows "re,im"; an optional header row is skipped. */
TANLAB_API tl_status tl_polyline_read_csv(const char* path, tl_polyline** out);
TANLAB_API void tl_polyline_destroy(tl_polyline* line);
TANLAB_API size_t tl_polyline_size(const tl_polyline* line);
TANLAB_API tl_complex tl_polyline_point(const tl_polyline* line, size_t i);
TANLAB_API int tl_polyline_closed(const tl_polyline* line);
/* Columns index,re,im */
TANLAB_API tl_status tl_polyline_to_csv(const tl_polyline* line, char** out);
TANLAB_API tl_status tl_lift_curve(const tl_map* map, const tl_polyline* curve, tl_complex base,
                                   tl_polyline** out);

/* ---- rotation numbers ------------------------------------------------- */

typedef struct tl_rotation tl_rotation;

TANLAB_API tl_status tl_rotation_from_real(double x, int depth, tl_rotation** out);
/* "golden", "sqrt2m1", "e-2" */
TANLAB_API tl_status tl_rotation_from_named(const char* name, int depth, tl_rotation** out);
/* theta = (p + q sqrt(d)) / r */
TANLAB_API tl_status tl_rotation_from_quadratic(int64_t p, int64_t q, int64_t d, int64_t r,
                                                int depth, tl_rotation** out);
TANLAB_API void tl_rotation_destroy(tl_rotation* rn);
TANLAB_API double tl_rotation_theta(const tl_rotation* rn);
TANLAB_API int tl_rotation_is_rational(const tl_rotation* rn);
TANLAB_API size_t tl_rotation_depth(const tl_rotation* rn);
TANLAB_API int64_t tl_rotation_quotient(const tl_rotation* rn, size_t i);
TANLAB_API int64_t tl_rotation_max_quotient(const tl_rotation* rn);
/* Writes up to capacity pairs; *count receives the number available. */
TANLAB_API tl_status tl_rotation_convergents(const tl_rotation* rn, int64_t* p, int64_t* q,
                                             size_t capacity, size_t* count);
TANLAB_API tl_status tl_rotation_brjuno(const tl_rotation* rn, int n, double* value,
                                        double* beta_tail);
TANLAB_API tl_complex tl_rotation_multiplier(const tl_rotation* rn);
TANLAB_API tl_status tl_rotation_to_json(const tl_rotation* rn, char** out);

/* ---- linearization and Siegel-disk indicators ------------------------- */

typedef struct tl_series tl_series;

/* Writes N+1 Taylor coefficients of tan, index = degree. */
TANLAB_API tl_status tl_tan_series(int N, double* out);
TANLAB_API tl_status tl_linearizer_create(tl_complex lambda, int N, int precision_digits,
                                          tl_series** out);
TANLAB_API tl_status tl_linearizer_from_rotation(const tl_rotation* rn, int N, int precision_digits,
                                                 tl_series** out);
TANLAB_API void tl_series_destroy(tl_series* s);
TANLAB_API int tl_series_order(const tl_series* s);
TANLAB_API int tl_series_precision_digits(const tl_series* s);
TANLAB_API tl_complex tl_series_coeff(const tl_series* s, int n);
TANLAB_API double tl_series_smallest_denominator(const tl_series* s);
TANLAB_API tl_status tl_conformal_radius(const tl_series* s, double* estimate, double* fit_quality);
/* rho is a fraction of the estimated conformal radius. */
TANLAB_API tl_status tl_trace_invariant_curve(const tl_series* s, double rho, int samples,
                                              tl_polyline** out);

typedef struct tl_siegel_config {
  int coeffs;
  int precision_digits;
  int samples;
  double extent_threshold;
  double gap_threshold; /* times |lambda| */
  double stability;
  int threads; /* 0 = hardware concurrency */
} tl_siegel_config;

typedef enum tl_verdict {
  TL_VERDICT_UNBOUNDED_LIKELY = 0,
  TL_VERDICT_BOUNDED_LIKELY = 1,
  TL_VERDICT_INCONCLUSIVE = 2
} tl_verdict;

typedef struct tl_estimate tl_estimate;

TANLAB_API void tl_siegel_config_default(tl_siegel_config* config);
TANLAB_API tl_status tl_siegel_run_rotation(const tl_rotation* rn, const double* rhos, size_t count,
                                            const tl_siegel_config* config, tl_estimate** out);
TANLAB_API tl_status tl_siegel_run_lambda(tl_complex lambda, const double* rhos, size_t count,
                                          const tl_siegel_config* config, tl_estimate** out);
TANLAB_API tl_status tl_siegel_run_series(const tl_series* s, const double* rhos, size_t count,
                                          const tl_siegel_config* config, tl_estimate** out);
TANLAB_API void tl_estimate_destroy(tl_estimate* est);
TANLAB_API tl_verdict tl_estimate_verdict(const tl_estimate* est);
TANLAB_API double tl_estimate_radius(const tl_estimate* est);
TANLAB_API double tl_estimate_extent(const tl_estimate* est);
TANLAB_API double tl_estimate_image_gap(const tl_estimate* est);
TANLAB_API size_t tl_estimate_trace_count(const tl_estimate* est);
TANLAB_API tl_status tl_estimate_trace(const tl_estimate* est, size_t i, double* rho, double* extent,
                                       double* image_gap);
TANLAB_API tl_status tl_estimate_to_json(const tl_estimate* est, char** out);
/* Columns rho,t,re,im */
TANLAB_API tl_status tl_estimate_traces_csv(const tl_estimate* est, char** out);

/* coords may be NULL (angles measured on z itself). */
TANLAB_API tl_status tl_orbit_rotation_number(const tl_map* map, tl_complex z0, int iterations,
                                              const tl_series* coords, double escape_radius,
                                              double* theta);

/* Ranked JSON report; *bounded_likely counts BoundedLikely verdicts (may be NULL). */
TANLAB_API tl_status tl_bounded_disk_scan(const tl_rotation* const* candidates,
                                          const char* const* labels, size_t count,
                                          const double* rhos, size_t rho_count,
                                          const tl_siegel_config* config, char** json_out,
                                          size_t* bounded_likely);

/* ---- dynamical and parameter plane scans ------------------------------ */

typedef struct tl_scan_config {
  int max_iter;
  double escape_im;
  double cycle_tol;
  int cycle_max_period;
} tl_scan_config;

typedef struct tl_cycle {
  int period;
  tl_complex multiplier;
  tl_complex representative;
} tl_cycle;

typedef enum tl_cell_tag {
  TL_CELL_ATTRACTED_TO_CYCLE = 0,
  TL_CELL_SIEGEL_CANDIDATE = 1,
  TL_CELL_NEAR_POLE_ESCAPE = 2,
  TL_CELL_UNDECIDED = 3
} tl_cell_tag;

typedef struct tl_cell {
  tl_cell_tag tag;
  int period;
  tl_complex representative;
  int iterations_used;
} tl_cell;

typedef struct tl_grid tl_grid;

TANLAB_API tl_status tl_scan_config_default(const tl_map* map, tl_scan_config* config);
/* Writes at most capacity iterates; *pole_hit is 1 when the orbit ended at a pole
 * (that final entry is not written to values). */
TANLAB_API tl_status tl_orbit(const tl_map* map, tl_complex z0, int n, const tl_scan_config* config,
                              tl_complex* values, int* deep, size_t capacity, size_t* count,
                              int* pole_hit);
TANLAB_API tl_status tl_detect_cycle(const tl_map* map, const tl_scan_config* config, tl_cycle* out,
                                     int* found);
TANLAB_API tl_status tl_classify_point(const tl_map* map, tl_complex z0,
                                       const tl_scan_config* config, tl_cell* out);
/* rect = {re_lo, im_lo, re_hi, im_hi} */
TANLAB_API tl_status tl_scan_dynamical(const tl_map* map, const double rect[4], int nx, int ny,
                                       const tl_scan_config* config, int threads, tl_grid** out);
TANLAB_API void tl_grid_destroy(tl_grid* grid);
TANLAB_API int tl_grid_nx(const tl_grid* grid);
TANLAB_API int tl_grid_ny(const tl_grid* grid);
TANLAB_API tl_status tl_grid_cell(const tl_grid* grid, int ix, int iy, tl_cell* out);
TANLAB_API tl_status tl_grid_histogram_json(const tl_grid* grid, char** out);
TANLAB_API tl_status tl_grid_ppm(const tl_grid* grid, unsigned char** data, size_t* size);
TANLAB_API tl_status tl_grid_render(const tl_grid* grid, const char* ppm_path,
                                    const char* legend_path);

typedef struct tl_probe_config {
  double epsilon;
  tl_scan_config scan;
  int cf_depth;
  int64_t bounded_type_bound;
  int linearizer_coeffs;
  int precision_digits;
} tl_probe_config;

TANLAB_API void tl_probe_config_default(tl_probe_config* config);
/* CSV columns theta,period,multiplier_abs,siegel_flag,error */
TANLAB_API tl_status tl_scan_parameter(double theta_lo, double theta_hi, int resolution,
                                       const tl_probe_config* config, int threads, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* TANLAB_TANLAB_H_ */
