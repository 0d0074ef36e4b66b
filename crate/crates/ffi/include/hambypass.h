#ifndef HAMBYPASS_H
#define HAMBYPASS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>

/**
 * Result codes.
 */
typedef enum HbStatus {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_POINTER = 1,
  HB_STATUS_INVALID_ARGUMENT = 2,
  HB_STATUS_PARSE_ERROR = 3,
  HB_STATUS_UNKNOWN_CONDITION = 4,
  HB_STATUS_BUFFER_TOO_SMALL = 5,
  HB_STATUS_INVALID_UTF8 = 6,
  HB_STATUS_PANIC = 7,
} HbStatus;

/**
 * Opaque digraph handle.
 */
typedef struct HbDigraph HbDigraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *hb_last_error(void);

/**
 * Builds a digraph of order `n` from `arc_count` pairs stored flat in `arcs`
 * (`u0, v0, u1, v1, ...`).
 *
 * # Safety
 * `arcs` must point to `2 * arc_count` readable values (or be null when
 * `arc_count` is 0); `out` must be writable.
 */
enum HbStatus hb_digraph_new(size_t n,
                             const size_t *arcs,
                             size_t arc_count,
                             struct HbDigraph **out);

/**
 * Parses the text format (`n m` header, then one `u v` arc per line).
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum HbStatus hb_digraph_parse(const char *text, struct HbDigraph **out);

/**
 * Generates a family member: `kstar` (n), `cycle` (n), `dnk` (n, k), `t5`,
 * `d0` (n, empty inner part), `d1` (n, k) or `kbipartite` (parts n and k).
 *
 * # Safety
 * `family` must be a nul-terminated string; `out` must be writable.
 */
enum HbStatus hb_digraph_family(const char *family, size_t n, size_t k, struct HbDigraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void hb_digraph_free(struct HbDigraph *g);

/**
 * Order of `g`, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t hb_digraph_order(const struct HbDigraph *g);

/**
 * Arc count of `g`, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t hb_digraph_arc_count(const struct HbDigraph *g);

/**
 * Whether the arc `u -> v` is present; false for a null handle or
 * out-of-range vertices.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
bool hb_digraph_has_arc(const struct HbDigraph *g, size_t u, size_t v);

/**
 * Evaluates a condition id such as `a_k:0`, `meyniel` or `thm16`.
 *
 * # Safety
 * `g` must be a live handle, `id` a nul-terminated string and `holds`
 * writable.
 */
enum HbStatus hb_check_condition(const struct HbDigraph *g, const char *id, bool *holds);

/**
 * Writes the vertex order of the lexicographically first Hamiltonian bypass
 * into `buf` and its length (the order of `g`) into `len`; `len` is 0 when
 * there is none. On `BufferTooSmall`, `len` holds the required capacity.
 *
 * # Safety
 * `g` must be a live handle; `buf` must have room for `capacity` values and
 * `len` must be writable.
 */
enum HbStatus hb_find_bypass(const struct HbDigraph *g, size_t *buf, size_t capacity, size_t *len);

/**
 * Like [`hb_find_bypass`] for a Hamiltonian cycle.
 *
 * # Safety
 * As for [`hb_find_bypass`].
 */
enum HbStatus hb_find_hamiltonian_cycle(const struct HbDigraph *g,
                                        size_t *buf,
                                        size_t capacity,
                                        size_t *len);

/**
 * Like [`hb_find_bypass`] for a cycle through all but one vertex.
 *
 * # Safety
 * As for [`hb_find_bypass`].
 */
enum HbStatus hb_find_pre_hamiltonian_cycle(const struct HbDigraph *g,
                                            size_t *buf,
                                            size_t capacity,
                                            size_t *len);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum HbStatus hb_is_isomorphic_to_t5(const struct HbDigraph *g, bool *out);

/**
 * Isomorphism test for orders up to 8.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum HbStatus hb_are_isomorphic(const struct HbDigraph *a, const struct HbDigraph *b, bool *out);

/**
 * Canonical form as a hex string (orders up to 8). Free with
 * [`hb_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum HbStatus hb_canonical_hex(const struct HbDigraph *g, char **out);

/**
 * The digraph in the text format. Free with [`hb_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum HbStatus hb_digraph_to_text(const struct HbDigraph *g, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void hb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HAMBYPASS_H */
