#ifndef CATHOM_H
#define CATHOM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CathomStatus {
  CATHOM_STATUS_OK = 0,
  CATHOM_STATUS_NULL_POINTER = 1,
  CATHOM_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON or a document that does not match its schema.
  CATHOM_STATUS_PARSE = 3,
  // Well-formed input that fails validation, or a failed check.
  CATHOM_STATUS_INVALID = 4,
  // An argument or buffer length outside the accepted range.
  CATHOM_STATUS_OUT_OF_RANGE = 5,
  // A panic was caught at the boundary.
  CATHOM_STATUS_INTERNAL = 6,
} CathomStatus;

typedef enum CathomComposition {
  // The unit laws force one composition and it is `⋄`.
  CATHOM_COMPOSITION_UNIQUE_DIAMOND = 0,
  // The unit laws force one composition that differs from `⋄`.
  CATHOM_COMPOSITION_UNIQUE_OTHER = 1,
  CATHOM_COMPOSITION_AFFINE = 2,
  CATHOM_COMPOSITION_NONE = 3,
} CathomComposition;

typedef enum CathomEhVerdict {
  CATHOM_EH_VERDICT_CONFIRMED = 0,
  CATHOM_EH_VERDICT_INTERCHANGE_VIOLATION = 1,
} CathomEhVerdict;

// A validated finite category.
typedef struct CathomCategory CathomCategory;

// A reflexive graph of rational vector spaces.
typedef struct CathomGraph CathomGraph;

// A finite set with two unital operations.
typedef struct CathomMagma CathomMagma;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty after a
// success. Valid until the next call into this library on the same thread.
const char *cathom_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void cathom_string_free(char *s);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum CathomStatus cathom_category_from_json(const char *json, struct CathomCategory **out);

// # Safety
// `c` must be null or a live handle from [`cathom_category_from_json`].
void cathom_category_free(struct CathomCategory *c);

// # Safety
// `c` must be a live handle; the out-parameters must be writable.
enum CathomStatus cathom_category_size(const struct CathomCategory *c,
                                       size_t *objects,
                                       size_t *morphisms);

// Writes the simplex counts of the nerve in dimensions `0..=max_dim`.
// `out_len` must be at least `max_dim + 1`.
//
// # Safety
// `c` must be a live handle and `out` must hold `out_len` values.
enum CathomStatus cathom_nerve_counts(const struct CathomCategory *c,
                                      size_t max_dim,
                                      size_t *out,
                                      size_t out_len);

// Writes the Betti numbers `b0..b_{max_dim-1}` of the nerve truncated at
// `max_dim`; the top degree is not reported. Requires `max_dim >= 1` and
// `out_len >= max_dim`.
//
// # Safety
// `c` must be a live handle and `out` must hold `out_len` values.
enum CathomStatus cathom_betti(const struct CathomCategory *c,
                               size_t max_dim,
                               bool normalized,
                               size_t *out,
                               size_t out_len);

// Sets `*ok` to whether every compatible boundary in dimension 3 (and 4
// when `max_dim == 4`) has exactly one filler. `max_dim` must be 3 or 4.
//
// # Safety
// `c` must be a live handle and `ok` writable.
enum CathomStatus cathom_two_coskeletal(const struct CathomCategory *c, size_t max_dim, bool *ok);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum CathomStatus cathom_graph_from_json(const char *json, struct CathomGraph **out);

// # Safety
// `g` must be null or a live handle from [`cathom_graph_from_json`].
void cathom_graph_free(struct CathomGraph *g);

// Computes `g ⋄ f` for vectors written like `(1, 0, 3/2, 0)`. The result
// is returned in the same notation.
//
// # Safety
// `graph` must be a live handle, `g` and `f` NUL-terminated strings, and
// `out` writable.
enum CathomStatus cathom_diamond(const struct CathomGraph *graph,
                                 const char *g,
                                 const char *f,
                                 char **out);

// Classifies the compositions allowed by the unit laws. `affine_dim` may
// be null; otherwise it receives the solution-space dimension (0 unless
// the verdict is `Affine`).
//
// # Safety
// `graph` must be a live handle and `verdict` writable.
enum CathomStatus cathom_solve_composition(const struct CathomGraph *graph,
                                           enum CathomComposition *verdict,
                                           size_t *affine_dim);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum CathomStatus cathom_magma_from_json(const char *json, struct CathomMagma **out);

// # Safety
// `m` must be null or a live handle from [`cathom_magma_from_json`].
void cathom_magma_free(struct CathomMagma *m);

// Tests the interchange law on every quadruple. `report` may be null;
// otherwise it receives a one-line description of the verdict.
//
// # Safety
// `m` must be a live handle and `verdict` writable.
enum CathomStatus cathom_eh_check(const struct CathomMagma *m,
                                  enum CathomEhVerdict *verdict,
                                  char **report);

// Library version, statically allocated.
const char *cathom_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CATHOM_H */
