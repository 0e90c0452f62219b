#ifndef FLAGCOH_H
#define FLAGCOH_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values 2 to 4 coincide with the command-line exit codes.
 */
typedef enum FlagcohStatus {
  FLAGCOH_STATUS_OK = 0,
  FLAGCOH_STATUS_INTERNAL = 1,
  FLAGCOH_STATUS_PARSE = 2,
  FLAGCOH_STATUS_MATH = 3,
  FLAGCOH_STATUS_CAP_EXCEEDED = 4,
  FLAGCOH_STATUS_NULL_POINTER = 5,
  FLAGCOH_STATUS_INVALID_UTF8 = 6,
  FLAGCOH_STATUS_PANIC = 7,
} FlagcohStatus;

typedef enum FlagcohSurjectivity {
  FLAGCOH_SURJECTIVITY_SURJECTIVE = 0,
  FLAGCOH_SURJECTIVITY_NOT_SURJECTIVE = 1,
  FLAGCOH_SURJECTIVITY_CRITERION_NOT_APPLICABLE = 2,
} FlagcohSurjectivity;

typedef enum FlagcohSaturation {
  FLAGCOH_SATURATION_HOLDS = 0,
  FLAGCOH_SATURATION_FAILS = 1,
  FLAGCOH_SATURATION_INCONCLUSIVE = 2,
} FlagcohSaturation;

/**
 * Opaque root system handle.
 */
typedef struct FlagcohRootSystem FlagcohRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a root system from a type string such as `"A2"` or `"A1xB2"`.
 *
 * # Safety
 * `ty` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FlagcohStatus flagcoh_root_system_new(const char *ty, struct FlagcohRootSystem **out);

/**
 * # Safety
 * `rs` must come from [`flagcoh_root_system_new`] and not be used afterwards.
 */
void flagcoh_root_system_free(struct FlagcohRootSystem *rs);

/**
 * Rank of the root system, 0 for a null handle.
 *
 * # Safety
 * `rs` must be null or a live handle.
 */
size_t flagcoh_root_system_rank(const struct FlagcohRootSystem *rs);

/**
 * Number of positive roots, 0 for a null handle.
 *
 * # Safety
 * `rs` must be null or a live handle.
 */
size_t flagcoh_num_positive_roots(const struct FlagcohRootSystem *rs);

/**
 * `|W|`.
 *
 * # Safety
 * `rs` must be a live handle and `out` a valid pointer.
 */
enum FlagcohStatus flagcoh_weyl_order(const struct FlagcohRootSystem *rs, uint64_t *out);

/**
 * Coefficients of the Poincaré polynomial, written to `out[0..=N]` where
 * `N` is the number of positive roots.
 *
 * # Safety
 * `out` must have room for `len` values.
 */
enum FlagcohStatus flagcoh_poincare(const struct FlagcohRootSystem *rs, uint64_t *out, size_t len);

/**
 * `k(λ) = ⟨λ, 2ρ∨⟩`.
 *
 * # Safety
 * `weight` must point to `len` values.
 */
enum FlagcohStatus flagcoh_k_value(const struct FlagcohRootSystem *rs,
                                   const int64_t *weight,
                                   size_t len,
                                   int64_t *out);

/**
 * Cohomology of `L_λ`. When `*vanishes` is 0, `*degree` is the unique
 * nonzero degree and `mu_out[0..len]` receives the dominant weight `μ`.
 *
 * # Safety
 * `lambda` and `mu_out` must each hold `len` values.
 */
enum FlagcohStatus flagcoh_bwb(const struct FlagcohRootSystem *rs,
                               const int64_t *lambda,
                               size_t len,
                               int32_t *vanishes,
                               size_t *degree,
                               int64_t *mu_out);

/**
 * `dim V(λ)` as a decimal string.
 *
 * # Safety
 * `weight` must point to `len` values; `out` receives a string to be freed
 * with [`flagcoh_string_free`].
 */
enum FlagcohStatus flagcoh_weyl_dimension(const struct FlagcohRootSystem *rs,
                                          const int64_t *weight,
                                          size_t len,
                                          char **out);

/**
 * `P_η`, optionally twisted. `twist` is null, `"w0"`, or a 1-based word
 * such as `"1,2,1"`.
 *
 * # Safety
 * `eta` must point to `len` values; `twist` must be null or NUL-terminated.
 */
enum FlagcohStatus flagcoh_p_eta(const struct FlagcohRootSystem *rs,
                                 const int64_t *eta,
                                 size_t len,
                                 const char *twist,
                                 char **out);

/**
 * Minimal-orbit data for a simple type.
 *
 * # Safety
 * `ty` must be NUL-terminated; output pointers must be valid.
 */
enum FlagcohStatus flagcoh_min_orbit(const char *ty,
                                     int64_t *k,
                                     int64_t *coxeter_h,
                                     enum FlagcohSurjectivity *surjectivity);

/**
 * Tests `Γ = ZΓ ∩ Λ⁺` for the monoid generated by `count` weights stored
 * row by row in `gens` (each of length `rank`). When the result is
 * `Fails`, `witness_out[0..rank]` receives a witness.
 *
 * # Safety
 * `gens` must hold `count * rank` values and `witness_out` `rank` values.
 */
enum FlagcohStatus flagcoh_svariety_check(const struct FlagcohRootSystem *rs,
                                          const int64_t *gens,
                                          size_t count,
                                          uint64_t hilbert_cap,
                                          enum FlagcohSaturation *verdict,
                                          int64_t *witness_out);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library from the same thread.
 */
const char *flagcoh_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void flagcoh_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *flagcoh_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLAGCOH_H */
