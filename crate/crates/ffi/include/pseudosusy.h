#ifndef PSEUDOSUSY_H
#define PSEUDOSUSY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_ARGUMENT = 2,
  PS_STATUS_BUFFER_TOO_SMALL = 3,
  PS_STATUS_NOT_SQUARE = 10,
  PS_STATUS_DIMENSION_MISMATCH = 11,
  PS_STATUS_NON_FINITE = 12,
  PS_STATUS_INVALID_TOLERANCE = 13,
  PS_STATUS_NUMERICAL_FAILURE = 14,
  PS_STATUS_NON_DIAGONALIZABLE = 15,
  PS_STATUS_NOT_PSEUDO_HERMITIAN = 16,
  PS_STATUS_REAL_SPECTRUM_REQUIRED = 17,
  PS_STATUS_INVALID_ETA = 18,
  PS_STATUS_NOT_ISOSPECTRAL = 19,
  PS_STATUS_DEGENERATE_TWO_LEVEL = 20,
  PS_STATUS_NON_REAL_DETERMINANT = 21,
  PS_STATUS_INVALID_SIGNS = 22,
  PS_STATUS_SINGULAR = 23,
  PS_STATUS_PANIC = 99,
} PsStatus;

typedef enum PsSpectrumTag {
  PS_SPECTRUM_TAG_ALL_REAL = 0,
  PS_SPECTRUM_TAG_CONJUGATE_PAIRED = 1,
  PS_SPECTRUM_TAG_MIXED = 2,
  PS_SPECTRUM_TAG_UNPAIRABLE = 3,
} PsSpectrumTag;

typedef struct PsEta PsEta;

typedef struct PsFactorization PsFactorization;

typedef struct PsMatrix PsMatrix;

typedef struct PsSusy PsSusy;

typedef struct PsSystem PsSystem;

typedef struct PsTolerance {
  double rtol;
  double atol;
  double cond_max;
} PsTolerance;

typedef struct PsComplex {
  double re;
  double im;
} PsComplex;

/**
 * A residual and the threshold it was compared against.
 */
typedef struct PsCheck {
  double residual;
  double threshold;
  bool pass;
} PsCheck;

typedef struct PsAlgebraReport {
  struct PsCheck q_squared;
  struct PsCheck q_sharp_squared;
  struct PsCheck anticommutator;
  struct PsCheck tau_q;
  struct PsCheck eta_tau;
  struct PsCheck q_h;
  struct PsCheck intertwining;
  struct PsCheck intertwining_sharp;
  struct PsCheck pseudo_hermiticity;
  bool pass;
} PsAlgebraReport;

/**
 * Integer part of the Witten-index report. `index_d_identity` is -1 when
 * the kernels contain null vectors and the identity does not apply.
 */
typedef struct PsWittenReport {
  uint64_t d0_plus;
  uint64_t d0_minus;
  int64_t delta;
  uint64_t ker_d;
  uint64_t ker_d_dagger;
  int64_t betti_plus;
  int64_t betti_minus;
  bool non_null_kernels;
  bool betti_identity;
  int32_t index_d_identity;
} PsWittenReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ps_version(void);

/**
 * Copy the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL; 0
 * when no error has been recorded.
 */
size_t ps_last_error_message(char *buf, size_t len);

struct PsTolerance ps_tolerance_default(void);

/**
 * Build a `rows × cols` matrix from `rows*cols` row-major entries.
 */
enum PsStatus ps_matrix_new(size_t rows,
                            size_t cols,
                            const struct PsComplex *entries,
                            struct PsMatrix **result);

void ps_matrix_free(struct PsMatrix *m);

size_t ps_matrix_rows(const struct PsMatrix *m);

size_t ps_matrix_cols(const struct PsMatrix *m);

/**
 * Copy the entries row-major into `buf`, which must hold `rows*cols` values.
 */
enum PsStatus ps_matrix_entries(const struct PsMatrix *m, struct PsComplex *buf, size_t len);

enum PsStatus ps_decompose(const struct PsMatrix *h,
                           const struct PsTolerance *tol,
                           struct PsSystem **result);

void ps_system_free(struct PsSystem *s);

size_t ps_system_dim(const struct PsSystem *s);

/**
 * Eigenvalue of each column of Ψ, `dim` values.
 */
enum PsStatus ps_system_eigenvalues(const struct PsSystem *s, struct PsComplex *buf, size_t len);

/**
 * Right eigenvectors Ψ (`which = 0`) or dual vectors Φ (`which = 1`).
 */
enum PsStatus ps_system_basis(const struct PsSystem *s, int32_t which, struct PsMatrix **result);

enum PsStatus ps_classify_spectrum(const struct PsSystem *s,
                                   const struct PsTolerance *tol,
                                   enum PsSpectrumTag *tag);

/**
 * Canonical metric of `s`. `signs` holds ±1 per real eigenvector in column
 * order; pass NULL for all +1.
 */
enum PsStatus ps_canonical_eta(const struct PsSystem *s,
                               const int32_t *signs,
                               size_t n_signs,
                               const struct PsTolerance *tol,
                               struct PsEta **result);

/**
 * Wrap a Hermitian invertible matrix as a metric.
 */
enum PsStatus ps_eta_from_matrix(const struct PsMatrix *m,
                                 const struct PsTolerance *tol,
                                 struct PsEta **result);

void ps_eta_free(struct PsEta *e);

/**
 * η (`inverse = false`) or η⁻¹ (`inverse = true`) as a new matrix.
 */
enum PsStatus ps_eta_matrix(const struct PsEta *e, bool inverse, struct PsMatrix **result);

enum PsStatus ps_verify_pseudo_hermiticity(const struct PsMatrix *h,
                                           const struct PsEta *e,
                                           const struct PsTolerance *tol,
                                           struct PsCheck *check);

/**
 * `H₁ = L♯L`, `H₂ = LL♯` for isospectral `s1`, `s2`.
 */
enum PsStatus ps_canonical_factorization(const struct PsSystem *s1,
                                         const struct PsSystem *s2,
                                         const struct PsTolerance *tol,
                                         struct PsFactorization **result);

enum PsStatus ps_self_factorization(const struct PsSystem *s,
                                    const struct PsTolerance *tol,
                                    struct PsFactorization **result);

/**
 * Closed-form factorization of `[[a, b], [c, -a]]`. `energy` may be NULL.
 */
enum PsStatus ps_two_level_factorization(struct PsComplex a,
                                         struct PsComplex b,
                                         struct PsComplex c,
                                         const struct PsTolerance *tol,
                                         struct PsComplex *energy,
                                         struct PsFactorization **result);

void ps_factorization_free(struct PsFactorization *f);

/**
 * L (`sharp = false`) or L♯ (`sharp = true`) as a new matrix.
 */
enum PsStatus ps_factorization_l(const struct PsFactorization *f,
                                 bool sharp,
                                 struct PsMatrix **result);

/**
 * `‖L♯L − H₁‖` and `‖LL♯ − H₂‖` with their thresholds. Either out pointer
 * may be NULL.
 */
enum PsStatus ps_factorization_residuals(const struct PsFactorization *f,
                                         struct PsCheck *h1,
                                         struct PsCheck *h2);

/**
 * Assemble from `D : H₊ → H₋`. NULL metrics mean the identity.
 */
enum PsStatus ps_susy_assemble(const struct PsMatrix *d,
                               const struct PsEta *eta_plus,
                               const struct PsEta *eta_minus,
                               struct PsSusy **result);

enum PsStatus ps_susy_from_factorization(const struct PsFactorization *f, struct PsSusy **result);

void ps_susy_free(struct PsSusy *p);

/**
 * The full Hamiltonian `H = diag(H₊, H₋)` as a new matrix.
 */
enum PsStatus ps_susy_hamiltonian(const struct PsSusy *p, struct PsMatrix **result);

enum PsStatus ps_susy_verify_algebra(const struct PsSusy *p,
                                     const struct PsTolerance *tol,
                                     struct PsAlgebraReport *report);

enum PsStatus ps_susy_witten_index(const struct PsSusy *p,
                                   const struct PsTolerance *tol,
                                   struct PsWittenReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSEUDOSUSY_H */
