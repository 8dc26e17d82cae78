#ifndef QLOGMAP_H
#define QLOGMAP_H

/* Generated by cbindgen from qlogmap-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Call outcome. `Ok` is zero; everything else identifies the failure class.
 */
typedef enum QlmStatus {
  QLM_STATUS_OK = 0,
  QLM_STATUS_NULL_POINTER = 1,
  QLM_STATUS_PARSE_ERROR = 2,
  QLM_STATUS_RANGE_ERROR = 3,
  QLM_STATUS_DOMAIN_ERROR = 4,
  QLM_STATUS_CONFIG_ERROR = 5,
  QLM_STATUS_INSUFFICIENT_DATA = 6,
  QLM_STATUS_COMPARISON_ERROR = 7,
  QLM_STATUS_INDEX_OUT_OF_RANGE = 8,
  QLM_STATUS_BUFFER_TOO_SMALL = 9,
  QLM_STATUS_IO_ERROR = 10,
} QlmStatus;

/**
 * Rounding mode select; values match the hardware select line.
 */
typedef enum QlmRoundMode {
  QLM_ROUND_MODE_TRUNC = 0,
  QLM_ROUND_MODE_CEIL_POS_INF = 1,
} QlmRoundMode;

/**
 * Opaque orbit handle.
 */
typedef struct QlmOrbit QlmOrbit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static name of a status code, e.g. `"ok"` or `"domain-error"`.
 */
const char *qlm_status_name(enum QlmStatus status);

/**
 * Encodes a plain decimal literal into a Q16.16 raw word.
 *
 * # Safety
 * `text` must point to a NUL-terminated string and `out_raw` to a writable
 * `int32_t`; both stay valid for the duration of the call.
 */
enum QlmStatus qlm_encode(const char *text, enum QlmRoundMode mode, int32_t *out_raw);

/**
 * Writes the exact decimal expansion of `raw / 2^16`, NUL-terminated.
 * 64 bytes always suffice.
 *
 * # Safety
 * `buf` must point to at least `cap` writable bytes.
 */
enum QlmStatus qlm_decode(int32_t raw, char *buf, size_t cap);

/**
 * Exact `1 - x` on the raw word.
 */
int32_t qlm_one_minus(int32_t raw);

/**
 * One multiply-convert unit: `a * b` rounded back to 32 bits with
 * saturation and flagging.
 *
 * # Safety
 * `out_raw`, `out_overflow` and `out_underflow` must be writable.
 */
enum QlmStatus qlm_mul_convert(int32_t a,
                               int32_t b,
                               enum QlmRoundMode mode,
                               int32_t *out_raw,
                               bool *out_overflow,
                               bool *out_underflow);

/**
 * One map iteration `r*x*(1-x)` on in-domain operands; flags are the OR of
 * both conversion stages.
 *
 * # Safety
 * `out_raw`, `out_overflow` and `out_underflow` must be writable.
 */
enum QlmStatus qlm_step(int32_t x,
                        int32_t r,
                        enum QlmRoundMode mode,
                        int32_t *out_raw,
                        bool *out_overflow,
                        bool *out_underflow);

/**
 * Runs an orbit of `n_iter` iterations from `x0`; the handle owns
 * `n_iter + 1` records including the initial condition.
 *
 * # Safety
 * `out_orbit` must be writable. The returned handle must be released with
 * `qlm_orbit_free`.
 */
enum QlmStatus qlm_orbit_run(int32_t r,
                             int32_t x0,
                             enum QlmRoundMode mode,
                             uint32_t n_iter,
                             struct QlmOrbit **out_orbit);

/**
 * Runs the cycle-level control-unit simulation and returns its orbit of
 * register load events (bit-identical to `qlm_orbit_run` with
 * `n_iter = it_max`). `it_max` is limited to 2047 by the 11-bit counter;
 * `latency` is the datapath latency in cycles, at least 1.
 *
 * # Safety
 * `out_orbit` must be writable. The returned handle must be released with
 * `qlm_orbit_free`.
 */
enum QlmStatus qlm_orbit_run_sim(int32_t r,
                                 int32_t x0,
                                 enum QlmRoundMode mode,
                                 uint16_t it_max,
                                 uint32_t latency,
                                 struct QlmOrbit **out_orbit);

/**
 * Number of records in the orbit (`n_iter + 1`); zero for a null handle.
 *
 * # Safety
 * `orbit` must be a live handle from this library, or null.
 */
size_t qlm_orbit_len(const struct QlmOrbit *orbit);

/**
 * Raw word of record `index` (0 is the initial condition).
 *
 * # Safety
 * `orbit` must be a live handle; `out_raw` must be writable.
 */
enum QlmStatus qlm_orbit_value(const struct QlmOrbit *orbit, size_t index, int32_t *out_raw);

/**
 * Overflow/underflow flags of record `index`.
 *
 * # Safety
 * `orbit` must be a live handle; both out-pointers must be writable.
 */
enum QlmStatus qlm_orbit_flags(const struct QlmOrbit *orbit,
                               size_t index,
                               bool *out_overflow,
                               bool *out_underflow);

/**
 * Releases an orbit handle. Null is ignored.
 *
 * # Safety
 * `orbit` must have come from this library and not been freed already.
 */
void qlm_orbit_free(struct QlmOrbit *orbit);

/**
 * Lyapunov exponent of the orbit; `out_skipped` counts zero-derivative
 * terms excluded from the average.
 *
 * # Safety
 * `orbit` must be a live handle; the out-pointers must be writable.
 */
enum QlmStatus qlm_lyapunov(const struct QlmOrbit *orbit,
                            double *out_lambda,
                            size_t *out_n_used,
                            size_t *out_skipped);

/**
 * First iteration at which the two orbits differ at the raw-bit level,
 * or -1 if they never do. The orbits must share r, x0 and length.
 *
 * # Safety
 * `a` and `b` must be live handles; `out_n` must be writable.
 */
enum QlmStatus qlm_first_bit_divergence(const struct QlmOrbit *a,
                                        const struct QlmOrbit *b,
                                        int64_t *out_n);

/**
 * First iteration at which the decoded difference exceeds `epsilon`,
 * or -1 if it never does.
 *
 * # Safety
 * `a` and `b` must be live handles; `out_n` must be writable.
 */
enum QlmStatus qlm_first_visible_divergence(const struct QlmOrbit *a,
                                            const struct QlmOrbit *b,
                                            double epsilon,
                                            int64_t *out_n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLOGMAP_H */
