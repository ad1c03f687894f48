#ifndef TMV_H
#define TMV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `TMV_STATUS_OK` is zero.
 */
typedef enum TmvStatus {
  TMV_STATUS_OK = 0,
  TMV_STATUS_NULL_POINTER = 1,
  TMV_STATUS_INVALID_INPUT = 2,
  TMV_STATUS_OUT_OF_RANGE = 3,
  TMV_STATUS_CAP_EXCEEDED = 4,
  TMV_STATUS_OVERFLOW = 5,
  TMV_STATUS_BUFFER_TOO_SMALL = 6,
  TMV_STATUS_INTERNAL = 7,
} TmvStatus;

/**
 * Result of an exact solve.
 */
typedef struct TmvCertificate TmvCertificate;

/**
 * A Hamming-graph shape `(n1, ..., nr)`.
 */
typedef struct TmvShape TmvShape;

/**
 * A vertex set over `0..universe`.
 */
typedef struct TmvVertexSet TmvVertexSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *tmv_status_message(enum TmvStatus status);

/**
 * Message of the last failed call on this thread, or "" after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *tmv_last_error(void);

/**
 * Creates a shape from `len` factor sizes.
 *
 * # Safety
 * `sizes` must point to `len` readable values; `out` must be writable.
 */
enum TmvStatus tmv_shape_new(const uint32_t *sizes, size_t len, struct TmvShape **out);

/**
 * # Safety
 * `shape` must be null or a handle from this library, freed at most once.
 */
void tmv_shape_free(struct TmvShape *shape);

/**
 * # Safety
 * `shape` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_shape_vertex_count(const struct TmvShape *shape, uint64_t *out);

/**
 * # Safety
 * `shape` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_shape_rank(const struct TmvShape *shape, size_t *out);

/**
 * Index of the vertex with 1-based coordinates `coords[0..len]`.
 *
 * # Safety
 * `shape` must be a valid handle, `coords` must point to `len` values and
 * `out` must be writable.
 */
enum TmvStatus tmv_shape_encode(const struct TmvShape *shape,
                                const uint32_t *coords,
                                size_t len,
                                size_t *out);

/**
 * Writes the 1-based coordinates of vertex `index` into `coords[0..rank]`;
 * `len` must be at least the rank.
 *
 * # Safety
 * `shape` must be a valid handle and `coords` must point to `len` writable values.
 */
enum TmvStatus tmv_shape_decode(const struct TmvShape *shape,
                                size_t index,
                                uint32_t *coords,
                                size_t len);

/**
 * Empty vertex set over the vertices of `shape`.
 *
 * # Safety
 * `shape` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_set_new(const struct TmvShape *shape, struct TmvVertexSet **out);

/**
 * # Safety
 * `set` must be null or a handle from this library, freed at most once.
 */
void tmv_set_free(struct TmvVertexSet *set);

/**
 * # Safety
 * `set` must be a valid handle.
 */
enum TmvStatus tmv_set_insert(struct TmvVertexSet *set, size_t index);

/**
 * # Safety
 * `set` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_set_contains(const struct TmvVertexSet *set, size_t index, bool *out);

/**
 * # Safety
 * `set` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_set_len(const struct TmvVertexSet *set, size_t *out);

/**
 * Copies the member indices in increasing order into `buf[0..cap]` and
 * stores the member count in `written`. If `cap` is too small nothing is
 * copied, `written` still receives the count and
 * `TMV_STATUS_BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `set` must be a valid handle, `buf` must point to `cap` writable values
 * (it may be null when `cap` is 0) and `written` must be writable.
 */
enum TmvStatus tmv_set_indices(const struct TmvVertexSet *set,
                               size_t *buf,
                               size_t cap,
                               size_t *written);

/**
 * Whether `set` is a total mutual-visibility set of the Hamming graph.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum TmvStatus tmv_is_tmv(const struct TmvShape *shape, const struct TmvVertexSet *set, bool *out);

/**
 * Exact `mu_t` with a witness. `threads` 0 uses all cores, `timeout_ms`
 * 0 means no limit; on expiry the certificate reports `optimal = false`.
 *
 * # Safety
 * `shape` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_solve(const struct TmvShape *shape,
                         size_t threads,
                         uint64_t timeout_ms,
                         bool symmetry,
                         struct TmvCertificate **out);

/**
 * # Safety
 * `cert` must be null or a handle from this library, freed at most once.
 */
void tmv_certificate_free(struct TmvCertificate *cert);

/**
 * # Safety
 * `cert` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_certificate_value(const struct TmvCertificate *cert, size_t *out);

/**
 * # Safety
 * `cert` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_certificate_optimal(const struct TmvCertificate *cert, bool *out);

/**
 * # Safety
 * `cert` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_certificate_nodes(const struct TmvCertificate *cert, uint64_t *out);

/**
 * A new set handle holding a copy of the witness.
 *
 * # Safety
 * `cert` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_certificate_witness(const struct TmvCertificate *cert,
                                       struct TmvVertexSet **out);

/**
 * The explicit optimal set for shapes with at most three non-trivial factors.
 *
 * # Safety
 * `shape` must be a valid handle; `out` must be writable.
 */
enum TmvStatus tmv_construct(const struct TmvShape *shape, struct TmvVertexSet **out);

/**
 * Closed-form `mu_t` of `K_n1 □ K_n2 □ K_n3`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TmvStatus tmv_theorem1_value(uint32_t n1, uint32_t n2, uint32_t n3, uint64_t *out);

/**
 * One run of the randomized construction on `K_s^r`. The set lives on
 * the balanced shape `(s, ..., s)`; `sampled` and `bad_pairs` may be null.
 *
 * # Safety
 * `out` must be writable; `sampled` and `bad_pairs` must be null or writable.
 */
enum TmvStatus tmv_random(uint32_t s,
                          size_t r,
                          uint64_t seed,
                          struct TmvVertexSet **out,
                          size_t *sampled,
                          size_t *bad_pairs);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TMV_H */
