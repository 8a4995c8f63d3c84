#ifndef MODLAP_H
#define MODLAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Engine selection; `Auto` uses the tree engine for trees.
typedef enum ModlapEngine {
  MODLAP_ENGINE_AUTO = 0,
  MODLAP_ENGINE_DENSE = 1,
  MODLAP_ENGINE_TREE = 2,
  MODLAP_ENGINE_PATH = 3,
} ModlapEngine;

// Result code of every fallible call.
typedef enum ModlapStatus {
  MODLAP_STATUS_OK = 0,
  MODLAP_STATUS_NULL_POINTER = 1,
  MODLAP_STATUS_PARSE = 2,
  MODLAP_STATUS_INVALID_ARGUMENT = 3,
  MODLAP_STATUS_NOT_A_TREE = 4,
  MODLAP_STATUS_NOT_CONNECTED = 5,
  MODLAP_STATUS_ENGINE_MISMATCH = 6,
  MODLAP_STATUS_NUMERICAL = 7,
  MODLAP_STATUS_OUT_OF_RANGE = 8,
  MODLAP_STATUS_IO = 9,
  MODLAP_STATUS_PANIC = 10,
} ModlapStatus;

// Opaque simple graph.
typedef struct ModlapGraph ModlapGraph;

// Opaque reusable heat-step solver.
typedef struct ModlapHeatSolver ModlapHeatSolver;

// Opaque float matrix `B`.
typedef struct ModlapMatrix ModlapMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *modlap_last_error(void);

// Library version as a static string.
const char *modlap_version(void);

// # Safety
// `s` must come from this library and not be freed already; null is a no-op.
void modlap_string_free(char *s);

// Builds a graph on `n` vertices from `m` edges stored as `2m` indices.
//
// # Safety
// `edges` must point to `2 * m` readable values (may be null when `m = 0`);
// `out` must be writable.
enum ModlapStatus modlap_graph_from_edges(size_t n,
                                          const size_t *edges,
                                          size_t m,
                                          struct ModlapGraph **out);

// Parses the `n m` header plus `u v` lines edge-list format.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum ModlapStatus modlap_graph_parse(const char *text, struct ModlapGraph **out);

// Generates a family member from a spec such as `"broom 6 5"`.
//
// # Safety
// `spec` must be a nul-terminated string; `out` must be writable.
enum ModlapStatus modlap_graph_generate(const char *spec, struct ModlapGraph **out);

// # Safety
// `g` must come from this library and not be freed already; null is a no-op.
void modlap_graph_free(struct ModlapGraph *g);

// Vertex count, or 0 for null.
//
// # Safety
// `g` must be null or a live graph handle.
size_t modlap_graph_vertex_count(const struct ModlapGraph *g);

// Edge count, or 0 for null.
//
// # Safety
// `g` must be null or a live graph handle.
size_t modlap_graph_edge_count(const struct ModlapGraph *g);

// Returns 1 for a tree, 0 otherwise (including null).
//
// # Safety
// `g` must be null or a live graph handle.
int modlap_graph_is_tree(const struct ModlapGraph *g);

// Computes `B = (I + h L)^{-1}` in floating point.
//
// # Safety
// `g` must be a live graph handle and `out` writable.
enum ModlapStatus modlap_compute(const struct ModlapGraph *g,
                                 double h,
                                 enum ModlapEngine engine,
                                 struct ModlapMatrix **out);

// Computes `B` exactly and returns it as JSON with `"p/q"` entries. `h` is
// a decimal or fraction string such as `"1"` or `"1/2"`.
//
// # Safety
// `g` must be a live graph handle, `h` nul-terminated and `out_json`
// writable. Free the result with [`modlap_string_free`].
enum ModlapStatus modlap_compute_exact_json(const struct ModlapGraph *g,
                                            const char *h,
                                            enum ModlapEngine engine,
                                            char **out_json);

// # Safety
// `b` must come from this library and not be freed already; null is a no-op.
void modlap_matrix_free(struct ModlapMatrix *b);

// Matrix dimension, or 0 for null.
//
// # Safety
// `b` must be null or a live matrix handle.
size_t modlap_matrix_dim(const struct ModlapMatrix *b);

// Reads entry `(i, j)`.
//
// # Safety
// `b` must be a live matrix handle and `out` writable.
enum ModlapStatus modlap_matrix_get(const struct ModlapMatrix *b, size_t i, size_t j, double *out);

// Copies the matrix row-major into `buf`, which must hold `len >= n * n`
// values.
//
// # Safety
// `b` must be a live matrix handle and `buf` writable for `len` values.
enum ModlapStatus modlap_matrix_copy(const struct ModlapMatrix *b, double *buf, size_t len);

// Runs a check suite in floating point. `passed` receives 1 when every
// check passes; `out_json` (optional, may be null) receives the report.
//
// # Safety
// `g` must be a live graph handle, `suite` nul-terminated, `passed`
// writable; `out_json` null or writable.
enum ModlapStatus modlap_check(const struct ModlapGraph *g,
                               double h,
                               const char *suite,
                               int *passed,
                               char **out_json);

// Factors `I + h L` once for repeated heat steps. `Path` is not accepted.
//
// # Safety
// `g` must be a live graph handle and `out` writable.
enum ModlapStatus modlap_heat_solver_new(const struct ModlapGraph *g,
                                         double h,
                                         enum ModlapEngine engine,
                                         struct ModlapHeatSolver **out);

// One implicit-Euler step: solves `(I + h L) u_next = u`. `u` and
// `u_next` hold `n` values and may alias.
//
// # Safety
// `s` must be a live solver; `u` readable and `u_next` writable for `n`
// values.
enum ModlapStatus modlap_heat_step(const struct ModlapHeatSolver *s,
                                   const double *u,
                                   double *u_next,
                                   size_t n);

// # Safety
// `s` must come from this library and not be freed already; null is a no-op.
void modlap_heat_solver_free(struct ModlapHeatSolver *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODLAP_H */
