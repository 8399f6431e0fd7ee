#ifndef PATHDEFORM_PATHDEFORM_H
#define PATHDEFORM_PATHDEFORM_H

/* C interface to libpathdeform. All objects are opaque and owned by the
 * caller once returned; free them with the matching *_free function.
 * Functions returning pd_status leave a message for pd_last_error() on
 * failure. The message is per thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PD_API __declspec(dllexport)
#else
#define PD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pd_status {
  PD_OK = 0,
  PD_ERR_INVALID_ARGUMENT = 1, /* bad config, flag combination or index */
  PD_ERR_IO = 2,
  PD_ERR_FIXTURE = 3, /* malformed finite monoid fixture */
  PD_ERR_INTERNAL = 4
} pd_status;

typedef struct pd_config pd_config;
typedef struct pd_report pd_report;
typedef struct pd_trace pd_trace;
typedef struct pd_monoid pd_monoid;

typedef struct pd_check {
  const char* name; /* valid while the report lives */
  int passed;
  double residual;
  uint64_t samples;
  uint64_t undefined;
} pd_check;

typedef struct pd_trace_row {
  double x;
  int defined;
  double omega; /* omega~ reduced mod the form modulus */
  double phase; /* unwound */
  double weight_re;
  double weight_im;
} pd_trace_row;

PD_API const char* pd_version(void);
/* Last error message on this thread, "" if none. */
PD_API const char* pd_last_error(void);

/* Run configuration. Defaults: sphere, unit square lattice, scale 1,
 * 1000 samples, seed 1. */
PD_API pd_status pd_config_new(pd_config** out);
PD_API void pd_config_free(pd_config* cfg);
/* "torus" or "sphere". */
PD_API pd_status pd_config_set_backend(pd_config* cfg, const char* name);
PD_API pd_status pd_config_set_lattice(pd_config* cfg, double b1x, double b1y, double b2x,
                                       double b2y);
PD_API pd_status pd_config_set_scale(pd_config* cfg, double scale);
PD_API pd_status pd_config_set_lambda(pd_config* cfg, double re, double im);
PD_API pd_status pd_config_set_quantum(pd_config* cfg, int64_t n);
PD_API pd_status pd_config_set_samples(pd_config* cfg, uint64_t samples);
PD_API pd_status pd_config_set_seed(pd_config* cfg, uint64_t seed);
PD_API pd_status pd_config_set_radius(pd_config* cfg, double radius);
/* Overrides every check tolerance. */
PD_API pd_status pd_config_set_tolerance(pd_config* cfg, double tol);

/* suite: cocycle, delta-squared, associativity, triviality-torus or
 * local-triviality. Config errors return PD_ERR_INVALID_ARGUMENT; failed
 * checks still return PD_OK with pd_report_passed() == 0. */
PD_API pd_status pd_verify(const pd_config* cfg, const char* suite, pd_report** out);

PD_API void pd_report_free(pd_report* report);
PD_API int pd_report_passed(const pd_report* report);
PD_API size_t pd_report_check_count(const pd_report* report);
PD_API pd_status pd_report_check(const pd_report* report, size_t index, pd_check* out);
/* Header plus one line per check; valid while the report lives. */
PD_API const char* pd_report_text(const pd_report* report);

PD_API pd_status pd_trace_equator(double colatitude, int64_t quantum, int steps, double scale,
                                  pd_trace** out);
PD_API void pd_trace_free(pd_trace* trace);
PD_API size_t pd_trace_row_count(const pd_trace* trace);
PD_API pd_status pd_trace_get_row(const pd_trace* trace, size_t index, pd_trace_row* out);
/* Fails when the first or last row is undefined. */
PD_API pd_status pd_trace_total_phase(const pd_trace* trace, double* out);
PD_API pd_status pd_trace_write_csv(const pd_trace* trace, const char* path);
/* Whole CSV as text, valid while the trace lives. */
PD_API const char* pd_trace_csv(const pd_trace* trace);

PD_API pd_status pd_monoid_load(const char* path, pd_monoid** out);
PD_API void pd_monoid_free(pd_monoid* monoid);
PD_API size_t pd_monoid_size(const pd_monoid* monoid);
PD_API pd_status pd_monoid_delta_check(const pd_monoid* monoid, uint64_t seed, pd_report** out);
PD_API pd_status pd_monoid_solve_triviality(const pd_monoid* monoid, uint64_t seed,
                                            pd_report** out);

#ifdef __cplusplus
}
#endif

#endif /* PATHDEFORM_PATHDEFORM_H */
