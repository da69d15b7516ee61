#ifndef ICSDE_H
#define ICSDE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum IcsdeStatus {
  ICSDE_STATUS_OK = 0,
  ICSDE_STATUS_NULL_POINTER = 1,
  ICSDE_STATUS_INVALID_ARGUMENT = 2,
  ICSDE_STATUS_UNKNOWN_PROBLEM = 3,
  ICSDE_STATUS_EVALUATION_ERROR = 4,
  ICSDE_STATUS_UNSUPPORTED_DIMENSION = 5,
  ICSDE_STATUS_INTERNAL = 6,
} IcsdeStatus;

// A benchmark problem instance.
typedef struct IcsdeProblem IcsdeProblem;

// A finished optimization run.
typedef struct IcsdeRun IcsdeRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *icsde_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *icsde_version(void);

// Create a problem from an id such as `"mw1"` or `"c3_dtlz4"`.
//
// # Safety
// `id` must be a NUL-terminated string; `out` must be writable.
enum IcsdeStatus icsde_problem_new(const char *id, struct IcsdeProblem **out);

// Release a problem. NULL is ignored.
//
// # Safety
// `p` must come from [`icsde_problem_new`] and not be used afterwards.
void icsde_problem_free(struct IcsdeProblem *p);

// Decision dimension, objective count and constraint count.
//
// # Safety
// `p` must be a live problem handle; output pointers may be NULL.
enum IcsdeStatus icsde_problem_dims(const struct IcsdeProblem *p,
                                    uintptr_t *n,
                                    uintptr_t *m,
                                    uintptr_t *q);

// Copy the box bounds into two arrays of length n.
//
// # Safety
// `lower` and `upper` must each hold n doubles.
enum IcsdeStatus icsde_problem_bounds(const struct IcsdeProblem *p, double *lower, double *upper);

// Evaluate one decision vector. `f` holds m doubles, `g` holds q doubles
// (may be NULL when q is 0), `cv` receives the total violation (may be NULL).
//
// # Safety
// Buffers must have the documented lengths.
enum IcsdeStatus icsde_problem_evaluate(const struct IcsdeProblem *p,
                                        const double *x,
                                        uintptr_t n,
                                        double *f,
                                        double *g,
                                        double *cv);

// Fitness of `count` members with `m` raw objectives each (row-major) and
// their constraint violations. Writes `count` values to `out`.
//
// # Safety
// `objectives` holds count*m doubles, `cv` and `out` hold count doubles.
enum IcsdeStatus icsde_fitness(const double *objectives,
                               const double *cv,
                               uintptr_t count,
                               uintptr_t m,
                               double *out);

// Normalized hypervolume of `count` points against a reference front of
// `front_count` points, both with `m` objectives.
//
// # Safety
// Buffers must hold count*m and front_count*m doubles; `out` must be writable.
enum IcsdeStatus icsde_hypervolume(const double *points,
                                   uintptr_t count,
                                   const double *front,
                                   uintptr_t front_count,
                                   uintptr_t m,
                                   double *out);

// Optimize `problem` with a variant preset (`"icsde"`, `"icsde-ga"`,
// `"icsde-de"`, `"isdeplus"`, `"cdp-baseline"`). Zero `population` or
// `max_fes` selects the instance default.
//
// # Safety
// `problem` must be live, `preset` NUL-terminated and `out` writable.
enum IcsdeStatus icsde_run_new(struct IcsdeProblem *problem,
                               const char *preset,
                               uintptr_t population,
                               uintptr_t max_fes,
                               uint64_t seed,
                               struct IcsdeRun **out);

// Release a run. NULL is ignored.
//
// # Safety
// `r` must come from [`icsde_run_new`] and not be used afterwards.
void icsde_run_free(struct IcsdeRun *r);

// Final hypervolume, evaluations used and final population size.
//
// # Safety
// `r` must be live; output pointers may be NULL.
enum IcsdeStatus icsde_run_summary(const struct IcsdeRun *r,
                                   double *final_hv,
                                   uintptr_t *fes_used,
                                   uintptr_t *population);

// Copy the final population: `x` holds size*n, `f` size*m and `cv` size
// doubles. Any of them may be NULL to skip.
//
// # Safety
// Non-NULL buffers must have the documented lengths.
enum IcsdeStatus icsde_run_population(const struct IcsdeRun *r, double *x, double *f, double *cv);

// The run as a JSON object. Free the string with [`icsde_string_free`].
//
// # Safety
// `r` must be live and `out` writable.
enum IcsdeStatus icsde_run_to_json(const struct IcsdeRun *r, char **out);

// Release a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void icsde_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ICSDE_H */
