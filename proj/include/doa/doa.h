/*
 * Copyright 2026 The safedoa Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef DOA_DOA_H
#define DOA_DOA_H

/*
 * C interface to the safedoa library: certified inner estimates of the safe
 * domain of attraction of a discrete-time system x+ = f(x).
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a doa_status;
 * on failure doa_last_error() returns a message describing the most recent
 * error raised on the calling thread. Handles are immutable after creation
 * and may be shared between threads.
 *
 * Vectors and matrices are passed as caller-owned double arrays; matrices are
 * row-major.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DOA_BUILDING_LIBRARY)
#    define DOA_API __declspec(dllexport)
#  else
#    define DOA_API __declspec(dllimport)
#  endif
#else
#  define DOA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DOA_OK = 0,
  DOA_ERROR_INVALID_ARGUMENT = 1,
  DOA_ERROR_DIMENSION = 2,
  DOA_ERROR_NOT_SYMMETRIC = 3,
  DOA_ERROR_NOT_POSITIVE_DEFINITE = 4,
  DOA_ERROR_SINGULAR = 5,
  DOA_ERROR_NO_UNIQUE_SOLUTION = 6,
  DOA_ERROR_SCHUR_UNSTABLE = 7,
  DOA_ERROR_NOT_CONVERGED = 8,
  DOA_ERROR_NUMERICAL = 9,
  DOA_ERROR_NOT_EQUILIBRIUM = 10,
  DOA_ERROR_EPSILON_TOO_LARGE = 11,
  DOA_ERROR_CAPABILITY = 12,
  DOA_ERROR_UNKNOWN_SYSTEM = 13,
  DOA_ERROR_PARSE = 14,
  DOA_ERROR_IO = 15,
  DOA_ERROR_INTERNAL = 99
} doa_status;

typedef struct doa_system doa_system;
typedef struct doa_report doa_report;
typedef struct doa_certificate doa_certificate;
typedef struct doa_trajectory doa_trajectory;

DOA_API const char* doa_status_string(doa_status status);
/* Message of the last failure on this thread ("" if none). */
DOA_API const char* doa_last_error(void);
DOA_API const char* doa_version(void);

/* ---- systems ------------------------------------------------------------ */

/* name: "two_machine" or "cart_pole". gain (length 4, may be NULL) overrides
 * the reference cart-pole feedback gain u = K x; pass NULL/0 otherwise. */
DOA_API doa_status doa_system_create(const char* name, const double* gain, size_t gain_len,
                                     doa_system** out);
DOA_API void doa_system_destroy(doa_system* sys);
DOA_API size_t doa_system_dim(const doa_system* sys);
DOA_API const char* doa_system_name(const doa_system* sys);
DOA_API doa_status doa_system_step(const doa_system* sys, const double* x, double* out);
DOA_API doa_status doa_system_theta(const doa_system* sys, const double* x, double* out);
/* Radius of the default box used to build the initial region (length dim). */
DOA_API doa_status doa_system_default_box(const doa_system* sys, double* radius);
/* 1 when the box with the given radius lies in the safe set, 0 when it does
 * not, -1 when the safe set is not a norm ball and the check is skipped. */
DOA_API doa_status doa_system_box_in_safe_set(const doa_system* sys, const double* radius,
                                              int* verdict);
/* LQR gain (u = K x) for the cart-pole from 4x4 Q and 1x1 R. */
DOA_API doa_status doa_cart_pole_lqr(const double* q, const double* r, double* gain);

/* ---- initial region of attraction -------------------------------------- */

typedef enum { DOA_BINDING_DECREASE = 1, DOA_BINDING_CONTAINMENT = 2 } doa_binding;

typedef struct {
  double epsilon;
  double d;
  double alpha;
  double beta;
  double c1; /* +inf when the dynamics are linear */
  double c2;
  double c;
  double lambda_min_p;
  double lambda_max_p;
  doa_binding binding;
} doa_report_summary;

typedef enum {
  DOA_MATRIX_A = 0, /* Jacobian at the origin */
  DOA_MATRIX_Q = 1,
  DOA_MATRIX_P = 2
} doa_report_matrix_id;

/* q: n*n (NULL = identity); box: n radii (NULL = system default);
 * epsilon <= 0 selects 0.01 * lambda_min(Q). */
DOA_API doa_status doa_initial_roa(const doa_system* sys, const double* q, const double* box,
                                   double epsilon, doa_report** out);
DOA_API void doa_report_destroy(doa_report* report);
DOA_API doa_status doa_report_summary_get(const doa_report* report, doa_report_summary* out);
DOA_API doa_status doa_report_matrix(const doa_report* report, doa_report_matrix_id which,
                                     double* out);
DOA_API doa_status doa_report_eta(const doa_report* report, double* out);
DOA_API doa_status doa_report_box(const doa_report* report, double* out);
/* Samples the region {x^T P x <= c}; *passed = 1 when the Lyapunov function
 * decreases at every sample. On failure the first counterexample is written to
 * counterexample (length n) when it is non-NULL. */
DOA_API doa_status doa_report_verify_decrease(const doa_report* report, const doa_system* sys,
                                              size_t samples, uint64_t seed, int* passed,
                                              double* counterexample);

/* ---- certificates (theta, v, k) ---------------------------------------- */

DOA_API doa_status doa_certificate_create(const doa_system* sys, const doa_report* report,
                                          size_t depth, doa_certificate** out);
DOA_API doa_status doa_certificate_load(const char* path, doa_certificate** out);
DOA_API doa_status doa_certificate_save(const doa_certificate* cert, const char* path);
/* Copy with a different depth k. */
DOA_API doa_status doa_certificate_with_depth(const doa_certificate* cert, size_t depth,
                                              doa_certificate** out);
DOA_API void doa_certificate_destroy(doa_certificate* cert);
DOA_API size_t doa_certificate_dim(const doa_certificate* cert);
DOA_API size_t doa_certificate_depth(const doa_certificate* cert);
DOA_API const char* doa_certificate_system_name(const doa_certificate* cert);
DOA_API doa_status doa_certificate_summary(const doa_certificate* cert, doa_report_summary* out);

/* v_k(x); +inf when the trajectory leaves the floating range. */
DOA_API doa_status doa_certificate_eval(const doa_certificate* cert, const double* x,
                                        double* value, int* member);
/* Smallest k <= k_max with x in V_k; *found = 0 when there is none. */
DOA_API doa_status doa_certificate_depth_scan(const doa_certificate* cert, const double* x,
                                              size_t k_max, int* found, size_t* depth);

typedef struct {
  size_t axis_i;
  size_t axis_j;
  const double* fixed; /* length dim; NULL = zeros */
  double lo_i, hi_i;
  double lo_j, hi_j;
  size_t n_i, n_j;
  unsigned threads; /* 0 = hardware concurrency */
} doa_section_spec;

/* values / members: caller buffers of n_i * n_j entries, row-major. */
DOA_API doa_status doa_section(const doa_certificate* cert, const doa_section_spec* spec,
                               double* values, unsigned char* members);
/* Writes the section as CSV (header i,j,x_i,x_j,value,member) to path. */
DOA_API doa_status doa_section_write_csv(const doa_certificate* cert, const doa_section_spec* spec,
                                         const char* path, size_t* member_count);

/* ---- trajectories ------------------------------------------------------- */

DOA_API doa_status doa_simulate(const doa_system* sys, const double* x0, size_t steps,
                                doa_trajectory** out);
DOA_API void doa_trajectory_destroy(doa_trajectory* traj);
DOA_API size_t doa_trajectory_length(const doa_trajectory* traj); /* states x_0..x_N */
DOA_API int doa_trajectory_diverged(const doa_trajectory* traj);
DOA_API doa_status doa_trajectory_state(const doa_trajectory* traj, size_t index, double* out);
/* first_violation = -1 when the trajectory never leaves the safe set. */
DOA_API doa_status doa_trajectory_check(const doa_trajectory* traj, const doa_system* sys,
                                        double conv_tol, int* safe, int* attracted,
                                        long long* first_violation);
/* CSV columns step,x1..xn,theta. */
DOA_API doa_status doa_trajectory_write_csv(const doa_trajectory* traj, const doa_system* sys,
                                            const char* path);

#ifdef __cplusplus
}
#endif

#endif /* DOA_DOA_H */
