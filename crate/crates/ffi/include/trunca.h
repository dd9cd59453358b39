#ifndef TRUNCA_H
#define TRUNCA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TruncaStatus {
  TRUNCA_STATUS_OK = 0,
  TRUNCA_STATUS_NULL_POINTER = 1,
  TRUNCA_STATUS_INVALID_ARGUMENT = 2,
  TRUNCA_STATUS_COMPUTATION_FAILED = 3,
  TRUNCA_STATUS_PANIC = 4,
} TruncaStatus;

/**
 * A root datum with its truncation tables and Weyl group.
 */
typedef struct TruncaDatum TruncaDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *trunca_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void trunca_string_free(char *s);

/**
 * Builds the datum of a Cartan type such as "A2", "B2", "A1xA1".
 *
 * # Safety
 * `cartan_type` must be a NUL-terminated string and `out` writable.
 */
enum TruncaStatus trunca_datum_new(const char *cartan_type, struct TruncaDatum **out);

/**
 * # Safety
 * `d` must come from [`trunca_datum_new`] or be null; it is invalid after.
 */
void trunca_datum_free(struct TruncaDatum *d);

/**
 * # Safety
 * `d` must be a live datum and `out` writable.
 */
enum TruncaStatus trunca_datum_rank(const struct TruncaDatum *d, uintptr_t *out);

/**
 * # Safety
 * `d` must be a live datum and `out` writable.
 */
enum TruncaStatus trunca_datum_root_count(const struct TruncaDatum *d, uintptr_t *out);

/**
 * # Safety
 * `d` must be a live datum and `out` writable.
 */
enum TruncaStatus trunca_datum_weyl_order(const struct TruncaDatum *d, uintptr_t *out);

/**
 * Γ_P(H, X). `p_mask` has bit i set when α_{i+1} is in P; `h` and `x` are
 * comma-separated rationals such as "1/2,-3".
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum TruncaStatus trunca_gamma(const struct TruncaDatum *d,
                               uint32_t p_mask,
                               const char *h,
                               const char *x,
                               int64_t *out);

/**
 * Σ_{H∈Λ} Γ_P(H, X) over the coroot lattice of 𝔞_P^G, by brute force and
 * by the product formula with base q. Both results are written as "n/d"
 * strings to be released with [`trunca_string_free`].
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum TruncaStatus trunca_qpsum(const struct TruncaDatum *d,
                               uint32_t p_mask,
                               const char *x,
                               uint64_t q,
                               char **brute_out,
                               char **product_out);

/**
 * The elliptic SL_l multiplicity for characters k_λ, k_μ of the norm-one
 * torus over F_q. Writes the regular character sum and J ∈ {0, 1}.
 *
 * # Safety
 * Out pointers must be writable.
 */
enum TruncaStatus trunca_sl_trace(uint64_t q,
                                  uint64_t l,
                                  uint64_t k_lambda,
                                  uint64_t k_mu,
                                  int64_t *char_sum_out,
                                  int64_t *j_out);

/**
 * Levi-centre criterion for split SL_n; exponent arrays have n − 1 entries.
 *
 * # Safety
 * `group` NUL-terminated; arrays readable for the given lengths.
 */
enum TruncaStatus trunca_filter_check(const char *group,
                                      uint64_t q,
                                      const uint64_t *theta_lambda,
                                      uintptr_t lambda_len,
                                      const uint64_t *theta_mu,
                                      uintptr_t mu_len,
                                      bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRUNCA_H */
