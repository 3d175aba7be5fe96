#ifndef MIXSPEC_H
#define MIXSPEC_H

/* C API for the mixspec library. All functions return a status code; on
 * failure the thread-local message from mixspec_last_error() describes the
 * cause. Handles are opaque and must be released with the matching _free
 * function. Strings returned through char** are heap-allocated and must be
 * released with mixspec_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mixspec_status {
  MIXSPEC_OK = 0,
  MIXSPEC_ERR_INVALID_ARGUMENT = 1,
  MIXSPEC_ERR_PRECONDITION = 2,
  MIXSPEC_ERR_NONFINITE = 3,
  MIXSPEC_ERR_CONSTRUCTION = 4,
  MIXSPEC_ERR_UNDEFINED_VALUE = 5,
  MIXSPEC_ERR_IO = 6,
  MIXSPEC_ERR_UNKNOWN = 7
} mixspec_status;

typedef struct mixspec_field mixspec_field;
typedef struct mixspec_coeffs mixspec_coeffs;
typedef struct mixspec_cantor mixspec_cantor;
typedef struct mixspec_series mixspec_series;
typedef struct mixspec_report mixspec_report;

const char* mixspec_version(void);

/* Message from the most recent failing call on this thread; empty if none. */
const char* mixspec_last_error(void);

void mixspec_string_free(char* s);

/* ---- sampled fields on the uniform periodic grid over [0,2pi)^2 ---- */

mixspec_status mixspec_field_sample_builtin(const char* name, int nx, int ny,
                                            mixspec_field** out);
mixspec_status mixspec_field_read_csv(const char* path, mixspec_field** out);
mixspec_status mixspec_field_csv(const mixspec_field* f, char** out);
mixspec_status mixspec_field_dims(const mixspec_field* f, int* nx, int* ny);
mixspec_status mixspec_field_value(const mixspec_field* f, int i, int j, double* out);
mixspec_status mixspec_field_l2(const mixspec_field* f, double* out);
void mixspec_field_free(mixspec_field* f);

/* Band limit of a named builtin: >= 0 when it is a trigonometric polynomial
 * with all modes inside that bound, -1 otherwise. */
mixspec_status mixspec_builtin_band_limit(const char* name, int* out);

/* ---- truncated Fourier coefficients on the box |n|<=nmax, |m|<=mmax ---- */

mixspec_status mixspec_analyze(const mixspec_field* f, int nmax, int mmax,
                               mixspec_coeffs** out);
mixspec_status mixspec_coeffs_dims(const mixspec_coeffs* c, int* nmax, int* mmax);
mixspec_status mixspec_coeffs_get(const mixspec_coeffs* c, int n, int m, double* re,
                                  double* im);
mixspec_status mixspec_synthesize(const mixspec_coeffs* c, int nx, int ny,
                                  mixspec_field** out);
mixspec_status mixspec_derivative_x(const mixspec_coeffs* c, mixspec_coeffs** out);
mixspec_status mixspec_derivative_y(const mixspec_coeffs* c, mixspec_coeffs** out);
mixspec_status mixspec_mixed_operator(const mixspec_coeffs* c, mixspec_coeffs** out);
mixspec_status mixspec_decay_norms(const mixspec_coeffs* c, double* s4x, double* s4y,
                                   double* sxy);
mixspec_status mixspec_coeffs_json(const mixspec_coeffs* c, char** out);
void mixspec_coeffs_free(mixspec_coeffs* c);

/* ---- fat Cantor sets on [0,1] ---- */

mixspec_status mixspec_cantor_build(int levels, double removal, mixspec_cantor** out);
mixspec_status mixspec_cantor_measure(const mixspec_cantor* s, double* out);
mixspec_status mixspec_cantor_num_intervals(const mixspec_cantor* s, int64_t* out);
mixspec_status mixspec_cantor_interval(const mixspec_cantor* s, int64_t index, double* a,
                                       double* b);
mixspec_status mixspec_cantor_validate(const mixspec_cantor* s);
void mixspec_cantor_free(mixspec_cantor* s);

/* ---- counterexample series on [0,1]^2 ---- */

/* kind is "thm51" (bump pairs) or "thm52" (zigzag strips). */
mixspec_status mixspec_series_build(const char* kind, int levels, double removal,
                                    int nterms, mixspec_series** out);
mixspec_status mixspec_series_num_terms(const mixspec_series* s, int* out);
mixspec_status mixspec_series_term(const mixspec_series* s, int index, double* eps,
                                   double* ua, double* ub, double* va, double* vb,
                                   double* witness_x, double* witness_y);
/* what is one of "f", "fx", "fy", "fxx", "fyy". */
mixspec_status mixspec_series_eval(const mixspec_series* s, double x, double y,
                                   const char* what, double* out);
mixspec_status mixspec_series_l1_bounds(const mixspec_series* s, double* sup_fxx,
                                        double* sup_fyy);
mixspec_status mixspec_series_metadata_json(const mixspec_series* s, char** out);
mixspec_status mixspec_series_witness_csv(const mixspec_series* s, char** out);
/* Sample the series rescaled to [0,2pi)^2 on an nx-by-ny grid. */
mixspec_status mixspec_series_sample(const mixspec_series* s, int nx, int ny,
                                     mixspec_field** out);
void mixspec_series_free(mixspec_series* s);

/* ---- verification pipeline ---- */

mixspec_status mixspec_pipeline_run_builtin(const char* name, int nx, int ny, int nmax,
                                            int mmax, double tol_spectral, double tol_quad,
                                            mixspec_report** out);
/* Field variant; quadrature checks are gated at tol_quad. */
mixspec_status mixspec_pipeline_run_field(const mixspec_field* f, int nmax, int mmax,
                                          double tol_spectral, double tol_quad,
                                          mixspec_report** out);
mixspec_status mixspec_report_json(const mixspec_report* r, int include_timings,
                                   char** out);
mixspec_status mixspec_report_all_pass(const mixspec_report* r, int* out);
/* Name of the first failing check, or the empty string. */
mixspec_status mixspec_report_first_failure(const mixspec_report* r, char** out);
void mixspec_report_free(mixspec_report* r);

/* ---- Hoelder modulus check ---- */

/* samples holds count values of a function on the uniform periodic grid over
 * [0,2pi); passes when the worst |g(s)-g(t)|/sqrt(|s-t|) stays within sqrt(c). */
mixspec_status mixspec_holder_check(const double* samples, int64_t count, double c,
                                    uint64_t seed, double* worst, int* pass);
mixspec_status mixspec_holder_check_builtin(const char* name, int64_t count, double c,
                                            uint64_t seed, double* worst, int* pass);

#ifdef __cplusplus
}
#endif

#endif /* MIXSPEC_H */
