#ifndef QSYLV_H
#define QSYLV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum QsStatus {
  QS_STATUS_OK = 0,
  QS_STATUS_NULL_POINTER = 1,
  QS_STATUS_INVALID_ARGUMENT = 2,
  QS_STATUS_DIMENSION_MISMATCH = 3,
  QS_STATUS_INCONSISTENT = 4,
  QS_STATUS_NUMERIC = 5,
  QS_STATUS_PARSE = 6,
  QS_STATUS_PANIC = 7,
} QsStatus;

typedef enum QsPinvMethod {
  QS_PINV_METHOD_CRAMER_LEFT = 0,
  QS_PINV_METHOD_CRAMER_RIGHT = 1,
  QS_PINV_METHOD_ORACLE = 2,
} QsPinvMethod;

/*
 Equation kinds, in the order of the library's `EquationKind::ALL`.
 */
typedef enum QsKind {
  QS_KIND_GEN_SYLVESTER = 0,
  QS_KIND_ONE_SIDED_LEFT = 1,
  QS_KIND_ONE_SIDED_RIGHT = 2,
  QS_KIND_STEIN = 3,
  QS_KIND_CLASSICAL_SYLVESTER = 4,
  QS_KIND_SYLVESTER_MIRROR = 5,
  QS_KIND_TWO_LEFT = 6,
  QS_KIND_TWO_RIGHT = 7,
  QS_KIND_LYAPUNOV_LIKE = 8,
  QS_KIND_LYAPUNOV_STAR = 9,
} QsKind;

typedef enum QsMethod {
  QS_METHOD_DIRECT = 0,
  QS_METHOD_CRAMER = 1,
  QS_METHOD_CRAMER_ROW_FORM = 2,
} QsMethod;

/*
 Dense quaternion matrix.
 */
typedef struct QsMatrix QsMatrix;

/*
 Validated equation instance.
 */
typedef struct QsProblem QsProblem;

/*
 Solution with its report.
 */
typedef struct QsSolution QsSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *qs_last_error(void);

/*
 Builds a `rows x cols` matrix from `rows * cols * 4` doubles, row-major, each entry `w, x, y, z`.

 # Safety
 `data` must point to `rows * cols * 4` readable doubles; `out` must be writable.
 */
enum QsStatus qs_matrix_new(size_t rows, size_t cols, const double *data, struct QsMatrix **out);

/*
 Parses `{"rows", "cols", "data"}` JSON.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QsStatus qs_matrix_from_json(const char *json, struct QsMatrix **out);

/*
 Serializes a matrix; release the string with [`qs_string_free`].

 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum QsStatus qs_matrix_to_json(const struct QsMatrix *m, char **out);

/*
 # Safety
 `s` must come from this library or be NULL.
 */
void qs_string_free(char *s);

/*
 # Safety
 `m` must be a live handle or NULL.
 */
size_t qs_matrix_rows(const struct QsMatrix *m);

/*
 # Safety
 `m` must be a live handle or NULL.
 */
size_t qs_matrix_cols(const struct QsMatrix *m);

/*
 Copies the entries into `out`, which holds `len` doubles (at least `rows * cols * 4`).

 # Safety
 `m` must be a live handle; `out` must point to `len` writable doubles.
 */
enum QsStatus qs_matrix_data(const struct QsMatrix *m, double *out, size_t len);

/*
 # Safety
 `m` must be a live handle or NULL; it is invalid afterwards.
 */
void qs_matrix_free(struct QsMatrix *m);

/*
 Moore-Penrose inverse.

 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum QsStatus qs_pinv(const struct QsMatrix *a, enum QsPinvMethod method, struct QsMatrix **out);

/*
 Row determinant anchored at 1-based row `index`, written to `out[0..4]`.

 # Safety
 `a` must be a live handle; `out` must point to 4 writable doubles.
 */
enum QsStatus qs_rdet(const struct QsMatrix *a, size_t index, double *out);

/*
 Column determinant anchored at 1-based column `index`, written to `out[0..4]`.

 # Safety
 `a` must be a live handle; `out` must point to 4 writable doubles.
 */
enum QsStatus qs_cdet(const struct QsMatrix *a, size_t index, double *out);

/*
 Builds an equation from the slots its kind uses; the others must be NULL. Inputs are copied.

 # Safety
 Non-NULL matrix arguments must be live handles; `out` must be writable.
 */
enum QsStatus qs_problem_new(enum QsKind kind,
                             const struct QsMatrix *a1,
                             const struct QsMatrix *b1,
                             const struct QsMatrix *a2,
                             const struct QsMatrix *b2,
                             const struct QsMatrix *c,
                             struct QsProblem **out);

/*
 # Safety
 `p` must be a live handle or NULL; it is invalid afterwards.
 */
void qs_problem_free(struct QsProblem *p);

/*
 Evaluates the solvability criteria; `*consistent` receives 1 or 0.

 # Safety
 `p` must be a live handle; `consistent` must be writable.
 */
enum QsStatus qs_check(const struct QsProblem *p, int32_t *consistent);

/*
 Solves the equation. Inconsistent equations yield `Inconsistent` unless `force` is non-zero.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum QsStatus qs_solve(const struct QsProblem *p,
                       enum QsMethod method,
                       int32_t force,
                       struct QsSolution **out);

/*
 Copy of `X1`.

 # Safety
 `s` must be a live handle; `out` must be writable.
 */
enum QsStatus qs_solution_x1(const struct QsSolution *s, struct QsMatrix **out);

/*
 Copy of `X2`; `*out` is set to NULL for single-unknown kinds.

 # Safety
 `s` must be a live handle; `out` must be writable.
 */
enum QsStatus qs_solution_x2(const struct QsSolution *s, struct QsMatrix **out);

/*
 Frobenius norm of `LHS - RHS`; NaN for a NULL handle.

 # Safety
 `s` must be a live handle or NULL.
 */
double qs_solution_residual(const struct QsSolution *s);

/*
 Solve report as JSON; release the string with [`qs_string_free`].

 # Safety
 `s` must be a live handle; `out` must be writable.
 */
enum QsStatus qs_solution_report_json(const struct QsSolution *s, char **out);

/*
 # Safety
 `s` must be a live handle or NULL; it is invalid afterwards.
 */
void qs_solution_free(struct QsSolution *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSYLV_H */
