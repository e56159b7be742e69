#ifndef BRIESKORN_H
#define BRIESKORN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes. `BK_STATUS_OK` is zero; every other value names a failure.
typedef enum BkStatus {
  BK_STATUS_OK = 0,
  BK_STATUS_NULL_POINTER = 1,
  BK_STATUS_EMPTY_EXPONENTS = 2,
  BK_STATUS_INVALID_EXPONENT = 3,
  BK_STATUS_INVALID_FAMILY = 4,
  BK_STATUS_ODD_DIMENSION = 5,
  BK_STATUS_BUDGET_EXCEEDED = 6,
  BK_STATUS_NOT_COMMON_MULTIPLE = 7,
  BK_STATUS_AMBIGUOUS_ROUNDING = 8,
  BK_STATUS_NOT_FINITE_ORDER = 9,
  BK_STATUS_INCOMPARABLE_LINKS = 10,
  BK_STATUS_NOT_DIVISIBLE_BY_EIGHT = 11,
  BK_STATUS_INVALID_ARGUMENT = 12,
  BK_STATUS_PANIC = 13,
} BkStatus;

// Opaque link handle.
typedef struct BkLink BkLink;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a link from `len` exponents. On success `*out` owns a new handle.
//
// # Safety
// `exponents` must point to `len` readable values; `out` must be writable.
enum BkStatus bk_link_new(const int64_t *exponents, size_t len, struct BkLink **out);

// Releases a handle from [`bk_link_new`]. Null is ignored.
//
// # Safety
// `link` must be null or a handle not yet freed.
void bk_link_free(struct BkLink *link);

// Real dimension of the link.
//
// # Safety
// `link` must be a live handle; `out` must be writable.
enum BkStatus bk_link_dimension(const struct BkLink *link, int64_t *out);

// Milnor number as a decimal string.
//
// # Safety
// `link` must be a live handle; `out` must be writable.
enum BkStatus bk_link_milnor_number(const struct BkLink *link, char **out);

// Whether the weighted-homogeneous positivity condition holds.
//
// # Safety
// `link` must be a live handle; `out` must be writable.
enum BkStatus bk_link_is_positive(const struct BkLink *link, bool *out);

// Signature of the Milnor fibre as a decimal string.
//
// # Safety
// `link` must be a live handle; `out` must be writable.
enum BkStatus bk_link_signature(const struct BkLink *link, char **out);

// Middle homology of the link, e.g. `"Z^2"` or `"Z_3"`.
//
// # Safety
// `link` must be a live handle; `out` must be writable.
enum BkStatus bk_link_homology(const struct BkLink *link, char **out);

// Middle homology of the `fold`-fold cyclic branched cover along `branch`.
//
// # Safety
// `branch` must be a live handle; `out` must be writable.
enum BkStatus bk_cover_homology(const struct BkLink *branch, uint64_t fold, char **out);

// `tau_k` as a decimal string.
//
// # Safety
// `out` must be writable.
enum BkStatus bk_tau(uint32_t k, char **out);

// `|bP_4m|` as a decimal string.
//
// # Safety
// `out` must be writable.
enum BkStatus bk_bp_order(uint32_t m, char **out);

// Number of distinct diffeomorphism types `D_n(k)` as a decimal string.
//
// # Safety
// `out` must be writable.
enum BkStatus bk_diffeo_count(uint32_t n, uint32_t k, char **out);

// Offset of `a` relative to `b` in dimension `4n - 1`, as a decimal string.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum BkStatus bk_diffeo_offset(const struct BkLink *a,
                               const struct BkLink *b,
                               uint32_t n,
                               char **out);

// Table rows for dimension `dim` as a JSON array.
//
// # Safety
// `ks` must point to `len` readable values; `out` must be writable.
enum BkStatus bk_table_json(uint32_t dim, const uint32_t *ks, size_t len, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void bk_string_free(char *s);

// Message for the last failure on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *bk_last_error_message(void);

// Static name of a status code.
const char *bk_status_name(enum BkStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRIESKORN_H */
