/*
 * zonoclt C API.
 *
 * Every fallible call returns a zc_status and, on failure, stores a message
 * retrievable with zc_context_last_error(). Objects are opaque handles owned
 * by the caller and released with the matching *_destroy function. Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with zc_string_free().
 *
 * Matrices are passed column-major: entry (i, j) of an n x N matrix is
 * data[j * n + i], so column j is the vector x_j in R^n.
 */
#ifndef ZONOCLT_H
#define ZONOCLT_H

#include <stddef.h>
#include <stdint.h>

#if defined(ZONOCLT_BUILDING_LIBRARY)
#define ZC_API __attribute__((visibility("default")))
#else
#define ZC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zc_status {
  ZC_OK = 0,
  ZC_INVALID_INPUT = 1,
  ZC_RANK_DEFICIENT = 2,
  ZC_RESOURCE_LIMIT = 3,
  ZC_IO_ERROR = 4,
  ZC_INTERNAL_ERROR = 5
} zc_status;

typedef struct zc_context zc_context;
typedef struct zc_config zc_config;
typedef struct zc_report zc_report;

/* One draw of (X_N, Y_N, Z_N) and the expansion coefficients. */
typedef struct zc_triple {
  double x_n;
  double y_n;
  double z_n;
  double alpha;
  double beta;
  double delta;
  uint32_t resamples;
} zc_triple;

ZC_API const char* zc_version(void);
ZC_API const char* zc_status_string(zc_status status);

ZC_API zc_status zc_context_create(zc_context** out);
ZC_API void zc_context_destroy(zc_context* ctx);
/* Message of the last failed call on ctx; empty string when none. */
ZC_API const char* zc_context_last_error(const zc_context* ctx);
/* Worker threads for the geometry calls below; 0 = all hardware threads. */
ZC_API zc_status zc_context_set_threads(zc_context* ctx, unsigned threads);

ZC_API void zc_string_free(char* s);

/* Signed determinant of an n x n matrix. */
ZC_API zc_status zc_det(zc_context* ctx, size_t n, const double* data, double* out);
/* det(M M^T)^{1/2} of an n x N matrix, N >= n. */
ZC_API zc_status zc_gram_det_sqrt(zc_context* ctx, size_t n, size_t N, const double* data, double* out);
/* Volume of the zonotope generated by the N columns of an n x N matrix. */
ZC_API zc_status zc_zonotope_volume(zc_context* ctx, size_t n, size_t N, const double* data, double* out);
/* Splitting triple for the Gaussian matrix drawn from stream (seed, stream). */
ZC_API zc_status zc_splitting_triple(zc_context* ctx, size_t n, size_t N, uint64_t seed, uint64_t stream,
                                     zc_triple* out);
/* Moment table for dimension n as JSON; N = 0 omits the N-dependent entries. */
ZC_API zc_status zc_moments_json(zc_context* ctx, size_t n, size_t N, char** out_json);

/* Experiment configuration, initialized with the experiment's defaults.
 * Experiment names: xn-clt, yn-variance, zn-clt, decomposition, zeta-ratio,
 * berry-esseen, moment-scaling, moments-dump (alias: moments). */
ZC_API zc_status zc_config_create(zc_context* ctx, const char* experiment, zc_config** out);
ZC_API void zc_config_destroy(zc_config* cfg);
ZC_API zc_status zc_config_set_n(zc_config* cfg, size_t n);
ZC_API zc_status zc_config_set_grid(zc_config* cfg, const size_t* values, size_t count);
ZC_API zc_status zc_config_set_samples(zc_config* cfg, size_t samples);
ZC_API zc_status zc_config_set_seed(zc_config* cfg, uint64_t seed);
ZC_API zc_status zc_config_set_threads(zc_config* cfg, unsigned threads);
ZC_API zc_status zc_config_set_emit_qq(zc_config* cfg, int enabled);
ZC_API zc_status zc_config_set_p(zc_config* cfg, int p);
ZC_API zc_status zc_config_set_zeta_draws(zc_config* cfg, size_t outer, size_t inner);
/* format: "json" or "csv"; path may be empty or NULL for stdout. */
ZC_API zc_status zc_config_set_output(zc_context* ctx, zc_config* cfg, const char* path, const char* format);
ZC_API zc_status zc_config_set_kernel(zc_context* ctx, zc_config* cfg, const char* label);
ZC_API zc_status zc_config_validate(zc_context* ctx, const zc_config* cfg);

ZC_API zc_status zc_run(zc_context* ctx, const zc_config* cfg, zc_report** out);
ZC_API void zc_report_destroy(zc_report* report);
ZC_API size_t zc_report_row_count(const zc_report* report);
ZC_API zc_status zc_report_json(zc_context* ctx, const zc_report* report, char** out);
/* Statistics only (rows and summary); identical across thread counts. */
ZC_API zc_status zc_report_statistics_json(zc_context* ctx, const zc_report* report, char** out);
ZC_API zc_status zc_report_csv(zc_context* ctx, const zc_report* report, char** out);
/* Writes the report (and QQ file, if enabled) to the configured output. */
ZC_API zc_status zc_report_emit(zc_context* ctx, const zc_report* report);

#ifdef __cplusplus
}
#endif

#endif /* ZONOCLT_H */
