#ifndef EXPCLASS_H
#define EXPCLASS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every exported function.
 */
typedef enum ExpclassStatus {
  EXPCLASS_STATUS_OK = 0,
  EXPCLASS_STATUS_NULL_POINTER = 1,
  EXPCLASS_STATUS_INVALID_ARGUMENT = 2,
  EXPCLASS_STATUS_NOT_SQUARE = 3,
  EXPCLASS_STATUS_DIMENSION_MISMATCH = 4,
  EXPCLASS_STATUS_NUMERICAL_FAILURE = 5,
  EXPCLASS_STATUS_OVERFLOW = 6,
  EXPCLASS_STATUS_PANIC = 7,
} ExpclassStatus;

/**
 * Opaque dense complex matrix.
 */
typedef struct ExpclassMatrix ExpclassMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *expclass_status_message(enum ExpclassStatus status);

/**
 * Builds a `rows × cols` matrix from row-major real and imaginary parts.
 * `im` may be null for a real matrix.
 *
 * # Safety
 * `re` (and `im` if non-null) must point to `rows * cols` doubles; `out` must be writable.
 */
enum ExpclassStatus expclass_matrix_new(size_t rows,
                                        size_t cols,
                                        const double *re,
                                        const double *im,
                                        struct ExpclassMatrix **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void expclass_matrix_free(struct ExpclassMatrix *m);

/**
 * # Safety
 * `m` must be a valid handle; `rows` and `cols` must be writable.
 */
enum ExpclassStatus expclass_matrix_dims(const struct ExpclassMatrix *m,
                                         size_t *rows,
                                         size_t *cols);

/**
 * Entry `(i, j)` as real and imaginary parts.
 *
 * # Safety
 * `m` must be a valid handle; `re` and `im` must be writable.
 */
enum ExpclassStatus expclass_matrix_get(const struct ExpclassMatrix *m,
                                        size_t i,
                                        size_t j,
                                        double *re,
                                        double *im);

/**
 * Weighted shift with subdiagonal `e^{−a n^α}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ExpclassStatus expclass_gallery_shift(double a,
                                           double alpha,
                                           size_t dim,
                                           struct ExpclassMatrix **out);

/**
 * Cyclic matrix with nonincreasing weights `taus[0..n]`.
 *
 * # Safety
 * `taus` must point to `n` doubles; `out` must be writable.
 */
enum ExpclassStatus expclass_gallery_cyclic(const double *taus,
                                            size_t n,
                                            struct ExpclassMatrix **out);

/**
 * Diagonal matrix with entries `e^{−a|m|}`, `m = 0, −1, 1, −2, 2, …`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ExpclassStatus expclass_gallery_convolution(double a, size_t dim, struct ExpclassMatrix **out);

/**
 * `|A|_{a,α} = max_n s_n(A) e^{a n^α}`.
 *
 * # Safety
 * `m` must be a valid handle; `out` must be writable.
 */
enum ExpclassStatus expclass_operator_gauge(const struct ExpclassMatrix *m,
                                            double a,
                                            double alpha,
                                            double *out);

/**
 * Upper bound for the departure from normality and its rate `b`.
 *
 * # Safety
 * `m` must be a valid handle; `nu` and `b` must be writable.
 */
enum ExpclassStatus expclass_departure_upper(const struct ExpclassMatrix *m,
                                             double a,
                                             double alpha,
                                             double *nu,
                                             double *b);

/**
 * `‖(zI − A)⁻¹‖`.
 *
 * # Safety
 * `m` must be a valid handle; `out` must be writable.
 */
enum ExpclassStatus expclass_resolvent_norm(const struct ExpclassMatrix *m,
                                            double z_re,
                                            double z_im,
                                            double *out);

/**
 * Resolvent bound `(1/d) f_{b,α}(ν/d)` at `z`; may be `+∞`.
 *
 * # Safety
 * `m` must be a valid handle; `out` must be writable.
 */
enum ExpclassStatus expclass_resolvent_bound(const struct ExpclassMatrix *m,
                                             double a,
                                             double alpha,
                                             double z_re,
                                             double z_im,
                                             double *out);

/**
 * Spectral-distance bound for `A`, `B` and the exact Hausdorff distance of their spectra.
 *
 * # Safety
 * `ma`, `mb` must be valid handles; `bound` and `hausdorff` must be writable.
 */
enum ExpclassStatus expclass_spectral_distance(const struct ExpclassMatrix *ma,
                                               const struct ExpclassMatrix *mb,
                                               double a,
                                               double alpha,
                                               double *bound,
                                               double *hausdorff);

/**
 * `f_{a,α}(r)` with its certified error radius.
 *
 * # Safety
 * `value` must be writable; `radius` may be null.
 */
enum ExpclassStatus expclass_f(double a, double alpha, double r, double *value, double *radius);

/**
 * `h_{a,α}(r)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ExpclassStatus expclass_h(double a, double alpha, double r, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXPCLASS_H */
