#ifndef DGFRAMES_H
#define DGFRAMES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of a library call.
 */
typedef enum DgfStatus {
  DGF_STATUS_OK = 0,
  /*
   The call ran and a check failed; any report output is still written.
   */
  DGF_STATUS_CHECK_FAILED = 1,
  /*
   Malformed or invalid input.
   */
  DGF_STATUS_INPUT_ERROR = 2,
  DGF_STATUS_NULL_POINTER = 3,
  /*
   A panic was caught at the boundary.
   */
  DGF_STATUS_INTERNAL = 4,
} DgfStatus;

/*
 A bounded free chain complex.
 */
typedef struct DgfComplex DgfComplex;

/*
 A validated-shape nerve simplex.
 */
typedef struct DgfSimplex DgfSimplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next library call on the same thread.
 */
const char *dgf_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string produced by this library and not yet freed.
 */
void dgf_string_free(char *s);

/*
 Parses a simplex from its JSON form. Shape errors are reported here;
 the Maurer–Cartan equation is only checked by [`dgf_simplex_validate`].

 # Safety
 `json` must be a nul-terminated string and `out` writable.
 */
enum DgfStatus dgf_simplex_from_json(const char *json, struct DgfSimplex **out);

/*
 Generates a random valid simplex of dimension `dim` from `seed`.

 # Safety
 `out` must be writable.
 */
enum DgfStatus dgf_simplex_generate(uint64_t seed,
                                    uintptr_t dim,
                                    bool perturbed,
                                    struct DgfSimplex **out);

/*
 Releases a simplex handle. Null is ignored.

 # Safety
 `s` must be null or a handle from this library and not yet freed.
 */
void dgf_simplex_free(struct DgfSimplex *s);

/*
 Writes the dimension of the simplex to `out`.

 # Safety
 `s` must be a live handle and `out` writable.
 */
enum DgfStatus dgf_simplex_dim(const struct DgfSimplex *s, uintptr_t *out);

/*
 Serializes the simplex to JSON.

 # Safety
 `s` must be a live handle and `out` writable.
 */
enum DgfStatus dgf_simplex_to_json(const struct DgfSimplex *s, char **out);

/*
 Checks the Maurer–Cartan equation. Returns `DGF_STATUS_CHECK_FAILED` if
 any sequence fails. The JSON report is written to `report` when it is
 not null.

 # Safety
 `s` must be a live handle; `report` must be null or writable.
 */
enum DgfStatus dgf_simplex_validate(const struct DgfSimplex *s, char **report);

/*
 Runs the full structural check suite on the frame diagram truncated at
 sequences of length `max_len`.

 # Safety
 `s` must be a live handle; `report` must be null or writable.
 */
enum DgfStatus dgf_simplex_check(const struct DgfSimplex *s, uintptr_t max_len, char **report);

/*
 Builds the frame object at `alpha`, given as comma-separated vertices
 such as `"0,1,1"`. Fails with `DGF_STATUS_CHECK_FAILED` if the simplex
 does not satisfy the Maurer–Cartan equation.

 # Safety
 `s` must be a live handle, `alpha` nul-terminated and `out` writable.
 */
enum DgfStatus dgf_frame_build(const struct DgfSimplex *s,
                               const char *alpha,
                               struct DgfComplex **out);

/*
 Frame object at `alpha` as JSON, with its homology.

 # Safety
 As for [`dgf_frame_build`].
 */
enum DgfStatus dgf_frame_json(const struct DgfSimplex *s, const char *alpha, char **out);

/*
 Parses a chain complex from JSON.

 # Safety
 `json` must be nul-terminated and `out` writable.
 */
enum DgfStatus dgf_complex_from_json(const char *json, struct DgfComplex **out);

/*
 Releases a complex handle. Null is ignored.

 # Safety
 `c` must be null or a handle from this library and not yet freed.
 */
void dgf_complex_free(struct DgfComplex *c);

/*
 Writes the rank of the complex in degree `degree` to `out`.

 # Safety
 `c` must be a live handle and `out` writable.
 */
enum DgfStatus dgf_complex_rank(const struct DgfComplex *c, int64_t degree, uintptr_t *out);

/*
 Writes the total rank of the complex to `out`.

 # Safety
 `c` must be a live handle and `out` writable.
 */
enum DgfStatus dgf_complex_total_rank(const struct DgfComplex *c, uintptr_t *out);

/*
 Serializes the complex to JSON.

 # Safety
 `c` must be a live handle and `out` writable.
 */
enum DgfStatus dgf_complex_to_json(const struct DgfComplex *c, char **out);

/*
 Homology as a JSON object from degree to group, e.g. `{"0": "Z/2"}`.
 Acyclic complexes give `{}`.

 # Safety
 `c` must be a live handle and `out` writable.
 */
enum DgfStatus dgf_complex_homology(const struct DgfComplex *c, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DGFRAMES_H */
