#ifndef MATLIFT_H
#define MATLIFT_H

/* C interface to the matlift library. Every entry point returns a status
 * code; 0 is success. On failure, matlift_last_error() returns a message for
 * the most recent failing call on the calling thread. Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching _free function; _free accepts NULL. When a call that creates an
 * object fails, the out-parameter is set to NULL. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Mirrors the library's internal error kinds one to one; the order never
 * changes, values are only appended. */
typedef enum matlift_status {
  MATLIFT_OK = 0,
  MATLIFT_INVALID_ARGUMENT,
  MATLIFT_ASYMMETRIC_INPUT,
  MATLIFT_NONZERO_DIAGONAL,
  MATLIFT_NOT_CENTERED,
  MATLIFT_CONTINUOUS_SUPPORT,
  MATLIFT_NOT_SCALAR,
  MATLIFT_DIMENSION_MISMATCH,
  MATLIFT_TOO_LARGE,
  MATLIFT_NOT_SYMMETRIC,
  MATLIFT_SPAN_EXCEEDS_N,
  MATLIFT_SIGMA_STAR_TOO_LARGE,
  MATLIFT_BUDGET_EXCEEDED,
  MATLIFT_EPS_OUT_OF_RANGE,
  MATLIFT_CONFIG_ERROR,
  MATLIFT_IO_ERROR,
  MATLIFT_NOT_CONVERGED,
  MATLIFT_INTERNAL
} matlift_status;

typedef struct matlift_matrix matlift_matrix;
typedef struct matlift_dist matlift_dist;
typedef struct matlift_lift matlift_lift;
typedef struct matlift_config matlift_config;
typedef struct matlift_result matlift_result;

const char* matlift_version(void);
const char* matlift_status_name(matlift_status s);

/* Message for the most recent failure on this thread; "" after a success. */
const char* matlift_last_error(void);

/* --- base matrices ------------------------------------------------------ */

/* Validates an n x n row-major symmetric matrix with zero diagonal. */
matlift_status matlift_matrix_create(int n, const double* rowmajor, matlift_matrix** out);
matlift_status matlift_matrix_load(const char* path, matlift_matrix** out);
void matlift_matrix_free(matlift_matrix* m);
int matlift_matrix_n(const matlift_matrix* m); /* -1 on NULL */
matlift_status matlift_matrix_spread(const matlift_matrix* m, double* sigma, double* sigma_star);

/* --- lifting laws ------------------------------------------------------- */

/* spec: "rademacher", "y_entry", "centered_permutation(k)",
 * "haar_orthogonal(k)", "haar_special_orthogonal(k)". */
matlift_status matlift_dist_parse(const char* spec, matlift_dist** out);
matlift_status matlift_dist_load(const char* path, matlift_dist** out); /* discrete dump */
void matlift_dist_free(matlift_dist* d);
int matlift_dist_k(const matlift_dist* d); /* -1 on NULL */
/* One sample from the stream (seed, stream); out holds k*k row-major. */
matlift_status matlift_dist_sample(const matlift_dist* d, uint64_t seed, uint64_t stream,
                                   double* out);

/* --- lifts -------------------------------------------------------------- */

matlift_status matlift_lift_build(const matlift_matrix* base, const matlift_dist* dist,
                                  uint64_t seed, uint64_t stream, matlift_lift** out);
matlift_status matlift_lift_load(const char* path, matlift_lift** out);
matlift_status matlift_lift_save(const matlift_lift* l, const char* path);
void matlift_lift_free(matlift_lift* l);
int matlift_lift_dim(const matlift_lift* l); /* -1 on NULL */
/* y = L x; both vectors have length matlift_lift_dim(l), no aliasing. */
matlift_status matlift_lift_apply(const matlift_lift* l, const double* x, double* y);
/* Spectral norm: dense for dim <= 4096, else Lanczos at tolerance tol
 * (pass 0 for the default) with a fixed internal seed. */
matlift_status matlift_lift_norm(const matlift_lift* l, double tol, double* out);

/* Spectral norm of a matrix, graph, or lift dump; the header token picks
 * the format. */
matlift_status matlift_norm_file(const char* path, double tol, double* out);

/* --- scalar bounds ------------------------------------------------------ */

matlift_status matlift_bound(double sigma, double sigma_star, long k, long n, double eps,
                             double c, double* out);
matlift_status matlift_bound_optimized(double sigma, double sigma_star, long k, long n, double c,
                                       double* value, double* eps_star);

/* --- configuration and experiments -------------------------------------- */

matlift_status matlift_config_load(const char* path, matlift_config** out);
matlift_status matlift_config_parse(const char* text, matlift_config** out);
/* key is "section.key"; later sets win, as CLI overrides. */
matlift_status matlift_config_set(matlift_config* c, const char* key, const char* value);
/* Raw value for key, or fallback when absent. The pointer stays valid on
 * the calling thread until the next matlift_config_get call. */
const char* matlift_config_get(const matlift_config* c, const char* key, const char* fallback);
void matlift_config_free(matlift_config* c);

matlift_status matlift_experiment_run(const matlift_config* c, matlift_result** out);
/* Bound table from the [bounds] section; summary CSV carries the table. */
matlift_status matlift_bounds_table(const matlift_config* c, matlift_result** out);
void matlift_result_free(matlift_result* r);
/* Strings stay valid until matlift_result_free. */
const char* matlift_result_summary_csv(const matlift_result* r);
const char* matlift_result_records_csv(const matlift_result* r); /* "" when empty */
int matlift_result_all_ok(const matlift_result* r);

/* Builds one lift from [base], [dist] and experiment.seed; writes its dump
 * to path. */
matlift_status matlift_lift_from_config(const matlift_config* c, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* MATLIFT_H */
