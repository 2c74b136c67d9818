#ifndef OSTROWSKI_H
#define OSTROWSKI_H

/* Generated by cbindgen. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Screen the function's own values.
 */
#define OSTRO_SENSE_CONVEX 0

/**
 * Screen for the reversed inequality.
 */
#define OSTRO_SENSE_CONCAVE 1

/**
 * Status code returned by every fallible entry point.
 */
enum OstroStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  /**
   * The call succeeded.
   */
  OSTRO_STATUS_OK = 0,
  /**
   * An argument lies outside the mathematical domain of the operation.
   */
  OSTRO_STATUS_DOMAIN = 1,
  /**
   * A computation met a non-finite value where a finite one is required.
   */
  OSTRO_STATUS_NON_FINITE = 2,
  /**
   * A tuning parameter violates its documented range.
   */
  OSTRO_STATUS_PARAM = 3,
  /**
   * An id or configuration string could not be interpreted.
   */
  OSTRO_STATUS_CONFIG = 4,
  /**
   * A required pointer argument was null.
   */
  OSTRO_STATUS_NULL_POINTER = 5,
  /**
   * A string argument was not valid UTF-8.
   */
  OSTRO_STATUS_UTF8 = 6,
  /**
   * The library panicked internally; report this as a bug.
   */
  OSTRO_STATUS_PANIC = 7,
};
#ifndef __cplusplus
typedef int32_t OstroStatus;
#endif // __cplusplus

/**
 * Opaque handle to a parsed, validated function.
 */
typedef struct OstroFunction OstroFunction;

/**
 * Flattened outcome of one bound evaluation.
 */
typedef struct OstroBound {
  /**
   * Left side of the inequality.
   */
  double lhs;
  /**
   * Right side of the inequality.
   */
  double rhs;
  /**
   * `rhs - lhs`; negative means the inequality failed numerically.
   */
  double margin;
  /**
   * 1 when `margin >= -tolerance * (1 + |rhs|)`.
   */
  int32_t holds;
  /**
   * 1 when the hypothesis behind the bound was verified (or none exists).
   */
  int32_t hypothesis_checked;
  /**
   * Evaluation point; NaN when the equation has no free point.
   */
  double x;
} OstroBound;

/**
 * Outcome of a lattice convexity screen.
 */
typedef struct OstroConvexity {
  /**
   * 1 when no lattice combination violated the inequality.
   */
  int32_t satisfied;
  /**
   * Largest positive defect found; 0 when satisfied.
   */
  double worst_violation;
  /**
   * Witness lattice point of the worst defect; NaN when satisfied.
   */
  double witness_x;
  /**
   * See `witness_x`.
   */
  double witness_y;
  /**
   * Interpolation weight of the witness; NaN when satisfied.
   */
  double witness_t;
  /**
   * Number of lattice combinations examined.
   */
  size_t samples;
} OstroConvexity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the most recent error message into `buf` (NUL-terminated,
 * truncated to `cap - 1` bytes) and returns the full message length in
 * bytes. Returns 0 when the last call succeeded. `buf` may be null to
 * query the length alone.
 *
 * # Safety
 *
 * `buf`, when non-null, must point to at least `cap` writable bytes.
 */
size_t ostro_last_error(char *buf, size_t cap);

/**
 * Parses a function id into a handle. Supported ids: `poly:c0,c1,...`,
 * `pow_s:s`, `cpow:c,s`, `breckner:u,v,w,s`, `ln`, `exp`. The handle must
 * be released with [`ostro_function_free`].
 *
 * # Safety
 *
 * `id` must be a NUL-terminated string; `out` must be a valid pointer.
 */
OstroStatus ostro_function_parse(const char *id, struct OstroFunction **out);

/**
 * Releases a handle from [`ostro_function_parse`]. Null is ignored.
 *
 * # Safety
 *
 * `f` must be null or a handle not already freed.
 */
void ostro_function_free(struct OstroFunction *f);

/**
 * Evaluates `f(t)`.
 *
 * # Safety
 *
 * `f` must be a live handle; `out` must be a valid pointer.
 */
OstroStatus ostro_eval(const struct OstroFunction *f, double t, double *out);

/**
 * Evaluates the first derivative `f'(t)`.
 *
 * # Safety
 *
 * `f` must be a live handle; `out` must be a valid pointer.
 */
OstroStatus ostro_eval_d1(const struct OstroFunction *f, double t, double *out);

/**
 * Evaluates the second derivative `f''(t)`.
 *
 * # Safety
 *
 * `f` must be a live handle; `out` must be a valid pointer.
 */
OstroStatus ostro_eval_d2(const struct OstroFunction *f, double t, double *out);

/**
 * Computes `sup |f''|` over `[a, b]`.
 *
 * # Safety
 *
 * `f` must be a live handle; `out` must be a valid pointer.
 */
OstroStatus ostro_sup_abs_d2(const struct OstroFunction *f, double a, double b, double *out);

/**
 * Computes the integral mean of `f` over `[a, b]` with the default
 * adaptive quadrature settings.
 *
 * # Safety
 *
 * `f` must be a live handle; `out` must be a valid pointer.
 */
OstroStatus ostro_interval_mean(const struct OstroFunction *f, double a, double b, double *out);

/**
 * Computes the signed deviation functional
 * `mean(f) - f(x) + (x - (a+b)/2) f'(x)` on `[a, b]`.
 *
 * # Safety
 *
 * `f` must be a live handle; `out` must be a valid pointer.
 */
OstroStatus ostro_functional(const struct OstroFunction *f,
                             double x,
                             double a,
                             double b,
                             double *out);

/**
 * Evaluates both sides of the kernel identity independently and their
 * absolute difference. Any out pointer may be null to skip that value.
 *
 * # Safety
 *
 * `f` must be a live handle; non-null out pointers must be valid.
 */
OstroStatus ostro_identity_residual(const struct OstroFunction *f,
                                    double x,
                                    double a,
                                    double b,
                                    double *out_lhs,
                                    double *out_rhs,
                                    double *out_residual);

/**
 * Evaluates one catalogue inequality for `f` on `[a, b]`.
 *
 * `equation_id` accepts the directly evaluable ids (`classic`, `e1.2`,
 * `e1.3`, `e1.1a`, `e1.1b`, `e2.5`, `e2.6a`, `e2.6b`, `e2.7`, `e2.8`,
 * `teo3`, `cor6`, `e2.9`, `e2.12`, `cor5`, `cor8`); the special-mean ids
 * are rejected. Pass NaN for `x`, `s`, `p`, `q` when the equation does not
 * use them, and NaN for `m` to derive `sup |f''|` automatically. A nonzero
 * `assume_hypothesis` skips hypothesis verification and marks it satisfied
 * (negative-control mode).
 *
 * # Safety
 *
 * `f` must be a live handle; `equation_id` must be NUL-terminated; `out`
 * must be a valid pointer.
 */
OstroStatus ostro_bound(const struct OstroFunction *f,
                        const char *equation_id,
                        double a,
                        double b,
                        double x,
                        double s,
                        double p,
                        double q,
                        double m,
                        int32_t assume_hypothesis,
                        struct OstroBound *out);

/**
 * Screens a function for s-convexity (`sense` = [`OSTRO_SENSE_CONVEX`]) or
 * s-concavity ([`OSTRO_SENSE_CONCAVE`]) on a `grid^3` lattice over
 * `[a, b]`. With `d2_power` NaN the function's own values are screened;
 * otherwise `|f''|^d2_power` is. `grid` must be at least 3.
 *
 * # Safety
 *
 * `f` must be a live handle; `out` must be a valid pointer.
 */
OstroStatus ostro_convexity(const struct OstroFunction *f,
                            double s,
                            double a,
                            double b,
                            int32_t sense,
                            double d2_power,
                            size_t grid,
                            struct OstroConvexity *out);

/**
 * `1 / (s + 3)`, the weighted kernel moment of `t^s`.
 *
 * # Safety
 *
 * `out` must be a valid pointer.
 */
OstroStatus ostro_moment_s2(double s, double *out);

/**
 * `2 / ((s+1)(s+2)(s+3))`, the weighted kernel moment of `(1-t)^s`.
 *
 * # Safety
 *
 * `out` must be a valid pointer.
 */
OstroStatus ostro_moment_beta(double s, double *out);

/**
 * Arithmetic mean of two nonnegative numbers.
 *
 * # Safety
 *
 * `out` must be a valid pointer.
 */
OstroStatus ostro_arithmetic_mean(double x, double y, double *out);

/**
 * Identric mean of two positive numbers.
 *
 * # Safety
 *
 * `out` must be a valid pointer.
 */
OstroStatus ostro_identric_mean(double x, double y, double *out);

/**
 * Generalized logarithmic mean of order `p` of two positive numbers;
 * `p` must stay away from 0 and -1.
 *
 * # Safety
 *
 * `out` must be a valid pointer.
 */
OstroStatus ostro_gen_log_mean(double x, double y, double p, double *out);

/**
 * Default relative tolerance used by [`ostro_bound`] when deciding
 * whether an inequality held.
 */
double ostro_default_tolerance(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* OSTROWSKI_H */
