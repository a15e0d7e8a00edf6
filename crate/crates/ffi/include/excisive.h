#ifndef EXCISIVE_H
#define EXCISIVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum ExcStatus {
  EXC_STATUS_OK = 0,
  EXC_STATUS_NULL_POINTER = 1,
  EXC_STATUS_PRECONDITION = 2,
  EXC_STATUS_BUDGET_EXCEEDED = 3,
  EXC_STATUS_DIMENSION_MISMATCH = 4,
  EXC_STATUS_NOT_ADMISSIBLE = 5,
  EXC_STATUS_ILL_FORMED_THOMASON = 6,
  EXC_STATUS_NOT_REPRESENTABLE = 7,
  EXC_STATUS_INTERNAL = 8,
  EXC_STATUS_OUT_OF_RANGE = 9,
  EXC_STATUS_PANIC = 10,
} ExcStatus;

// Structure constants of the Goodwillie-Burnside ring `A(d)`.
typedef struct ExcPresentation ExcPresentation;

// A finite truncation of the Balmer spectrum with its inclusion order.
typedef struct ExcTruncation ExcTruncation;

// A value of `ℕ ∪ {∞}`; `value` is ignored when `infinite` is set.
typedef struct ExcNatInf {
  uint64_t value;
  bool infinite;
} ExcNatInf;

// A point of a Balmer spectrum truncation. `characteristic` is 0 for the
// height-1 points.
typedef struct ExcPoint {
  uint32_t layer;
  uint64_t characteristic;
  struct ExcNatInf height;
} ExcPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread; never NULL.
const char *exc_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed before.
void exc_string_free(char *s);

// `δ_p(k, l)`.
//
// # Safety
// `out` must be valid for writes.
enum ExcStatus exc_delta_p(uint64_t p, uint64_t k, uint64_t l, struct ExcNatInf *out);

// Whether `k` is a sum of exactly `l` powers of `p`.
//
// # Safety
// `out` must be valid for writes.
enum ExcStatus exc_ppp_exists(uint64_t p, uint64_t k, uint64_t l, bool *out);

// `μ(i, j, k)` as a decimal string. `method` is 0 (brute force),
// 1 (inclusion-exclusion) or 2 (Stirling numbers).
//
// # Safety
// `out` must be valid for writes; free the result with [`exc_string_free`].
enum ExcStatus exc_mu(uint64_t i, uint64_t j, uint64_t k, uint32_t method, char **out);

// Whether `P([k], p, n+1) ⊆ P([l], p, h+1)` in the spectrum of `d`-excisive functors.
//
// # Safety
// `out` must be valid for writes.
enum ExcStatus exc_smith_holds(uint32_t d,
                               uint64_t p,
                               uint32_t k,
                               uint32_t l,
                               struct ExcNatInf n,
                               struct ExcNatInf h,
                               bool *out);

// Number of `p`-admissible functions on `[d]` with values in `{0..hmax, ∞}`.
// Fails with `BudgetExceeded` when `(hmax + 2)^d > budget`.
//
// # Safety
// `out` must be valid for writes.
enum ExcStatus exc_count_p_admissible(uint32_t d,
                                      uint64_t p,
                                      uint64_t hmax,
                                      uint64_t budget,
                                      uint64_t *out);

// Builds the presentation of `A(d)`.
//
// # Safety
// `out` must be valid for writes; release the handle with [`exc_presentation_free`].
enum ExcStatus exc_presentation_new(uintptr_t d, struct ExcPresentation **out);

// # Safety
// `pres` must be NULL or a live handle from [`exc_presentation_new`].
void exc_presentation_free(struct ExcPresentation *pres);

// The rank `d` of the ring, or 0 for NULL.
//
// # Safety
// `pres` must be NULL or a live handle.
uintptr_t exc_presentation_rank(const struct ExcPresentation *pres);

// The coefficient of `x_l` in `x_i x_j`, as a decimal string.
//
// # Safety
// `pres` must be a live handle and `out` valid for writes; free the result
// with [`exc_string_free`].
enum ExcStatus exc_presentation_mu(const struct ExcPresentation *pres,
                                   uintptr_t i,
                                   uintptr_t j,
                                   uintptr_t l,
                                   char **out);

// Builds the truncation of layers `1..=d` over `primes[0..n_primes]`, with
// heights up to `hmax` and optionally `∞`.
//
// # Safety
// `primes` must point to `n_primes` readable values (or be NULL with
// `n_primes == 0`); `out` must be valid for writes. Release with
// [`exc_truncation_free`].
enum ExcStatus exc_truncation_new(uint32_t d,
                                  const uint64_t *primes,
                                  uintptr_t n_primes,
                                  uint64_t hmax,
                                  bool include_infinity,
                                  struct ExcTruncation **out);

// # Safety
// `t` must be NULL or a live handle from [`exc_truncation_new`].
void exc_truncation_free(struct ExcTruncation *t);

// Number of points, or 0 for NULL.
//
// # Safety
// `t` must be NULL or a live handle.
uintptr_t exc_truncation_len(const struct ExcTruncation *t);

// The point at `index`, in the canonical (layer, characteristic, height) order.
//
// # Safety
// `t` must be a live handle and `out` valid for writes.
enum ExcStatus exc_truncation_point(const struct ExcTruncation *t,
                                    uintptr_t index,
                                    struct ExcPoint *out);

// Whether point `a` is contained in point `b`.
//
// # Safety
// `t` must be a live handle and `out` valid for writes.
enum ExcStatus exc_truncation_leq(const struct ExcTruncation *t,
                                  uintptr_t a,
                                  uintptr_t b,
                                  bool *out);

// Graphviz rendering of the Hasse diagram.
//
// # Safety
// `t` must be a live handle and `out` valid for writes; free the result with
// [`exc_string_free`].
enum ExcStatus exc_truncation_dot(const struct ExcTruncation *t, char **out);

// JSON rendering: points, covers and the full relation.
//
// # Safety
// `t` must be a live handle and `out` valid for writes; free the result with
// [`exc_string_free`].
enum ExcStatus exc_truncation_json(const struct ExcTruncation *t, char **out);

// Version string of the library; static, never freed.
const char *exc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXCISIVE_H */
