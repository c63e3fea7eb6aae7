#ifndef QECMERIT_H
#define QECMERIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  QM_STATUS_OK = 0,
  QM_STATUS_NULL_POINTER = 1,
  /**
   * Argument outside its domain (probability not in [0, 1], bad index, ...).
   */
  QM_STATUS_DOMAIN = 2,
  /**
   * Every outcome was discarded or uncorrectable.
   */
  QM_STATUS_DEGENERATE = 3,
  /**
   * Eigensolver, Hermiticity or positivity failure.
   */
  QM_STATUS_NUMERICAL = 4,
  /**
   * Two independent evaluation routes disagreed.
   */
  QM_STATUS_CONSISTENCY = 5,
  /**
   * Output buffer too small; the required size was reported.
   */
  QM_STATUS_BUFFER_TOO_SMALL = 6,
  QM_STATUS_IO = 7,
  QM_STATUS_PANIC = 8,
} QmStatus;

typedef enum {
  /**
   * Uncorrectable outcomes replaced by the maximally mixed state.
   */
  QM_STRATEGY_I = 1,
  /**
   * Uncorrectable outcomes tagged and discarded.
   */
  QM_STRATEGY_II = 2,
} QmStrategy;

/**
 * Opaque syndrome basis of the five-qubit code.
 */
typedef struct QmBasis QmBasis;

/**
 * Opaque sweep result table.
 */
typedef struct QmTable QmTable;

typedef struct {
  double p_ok;
  double p_err;
  double p_unc;
} QmChannelMatrix;

typedef struct {
  double i_strategy1;
  /**
   * Per kept bit.
   */
  double i_ok;
  /**
   * Per transmitted bit.
   */
  double i_strategy2;
  double success_strategy1;
  double success_strategy2;
} QmClassicalInfo;

typedef struct {
  double bits_per_second;
  double err_rate;
  double equivocation_rate;
  double similarity_matches;
  double erasure_loss;
} QmShannonReport;

/**
 * Row-major 4×4 joint density matrix, basis `{0_L⊗g, 1_L⊗g, 0_L⊗g⊥, 1_L⊗g⊥}`.
 */
typedef struct {
  double re[16];
  double im[16];
  double kept_fraction;
  /**
   * Uncorrectable weight for `g` and `g⊥`.
   */
  double uncorrectable[2];
} QmJointState;

typedef struct {
  double mutual_info;
  double fidelity;
  double kept_fraction;
} QmFom;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message on this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length excluding the NUL,
 * or 0 when there is no error.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t qm_last_error_message(char *buf, size_t len);

/**
 * Builds and verifies the 32-vector syndrome basis. Returns null on failure.
 */
QmBasis *qm_basis_new(void);

/**
 * # Safety
 * `basis` must be null or a pointer returned by [`qm_basis_new`] that has
 * not been freed.
 */
void qm_basis_free(QmBasis *basis);

/**
 * Maximum Gram-matrix deviation of the basis from the identity.
 *
 * # Safety
 * `basis` must be a live handle; `out` must be valid for a write.
 */
QmStatus qm_basis_gram_deviation(const QmBasis *basis, double *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
QmStatus qm_repetition4_channel(double q, QmChannelMatrix *out);

/**
 * Mutual information and success probability of both strategies at `q`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
QmStatus qm_classical_info(double q, QmClassicalInfo *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
QmStatus qm_shannon_example(double bits_per_second, double err_rate, QmShannonReport *out);

/**
 * Joint sender/receiver state for `|g⟩ = sin α|0_L⟩ + e^{iφ} cos α|1_L⟩`.
 *
 * # Safety
 * `basis` must be a live handle; `out` must be valid for a write.
 */
QmStatus qm_joint_state(const QmBasis *basis,
                        double alpha,
                        double phi,
                        double q,
                        QmStrategy strategy,
                        QmJointState *out);

/**
 * Mutual information and fidelity at one point. Strategy II values are
 * already weighted by the kept fraction.
 *
 * # Safety
 * `basis` must be a live handle; `out` must be valid for a write.
 */
QmStatus qm_evaluate(const QmBasis *basis,
                     double alpha,
                     double phi,
                     double q,
                     QmStrategy strategy,
                     QmFom *out);

/**
 * Classical sweep over `q_steps` points in `[q_min, q_max]`, both strategies.
 *
 * # Safety
 * `out` must be valid for a write; the handle it receives is released with
 * [`qm_table_free`].
 */
QmStatus qm_classical_sweep(double q_min, double q_max, size_t q_steps, size_t jobs, QmTable **out);

/**
 * Five-qubit sweep over `alpha_steps × q_steps` points, both strategies.
 *
 * # Safety
 * `out` must be valid for a write; the handle it receives is released with
 * [`qm_table_free`].
 */
QmStatus qm_quantum_sweep(double q_min,
                          double q_max,
                          size_t q_steps,
                          size_t alpha_steps,
                          double phi,
                          size_t jobs,
                          QmTable **out);

/**
 * # Safety
 * `table` must be null or a live handle.
 */
void qm_table_free(QmTable *table);

/**
 * # Safety
 * `table` must be a live handle; `rows` and `cols` must be valid for writes.
 */
QmStatus qm_table_shape(const QmTable *table, size_t *rows, size_t *cols);

/**
 * # Safety
 * `table` must be a live handle; `out` must be valid for a write.
 */
QmStatus qm_table_value(const QmTable *table, size_t row, size_t col, double *out);

/**
 * Copies the CSV rendering into `buf`. `needed` receives the byte length
 * including the trailing NUL; a short buffer yields `BufferTooSmall`.
 *
 * # Safety
 * `table` must be a live handle, `buf` null or valid for `len` bytes, and
 * `needed` valid for a write.
 */
QmStatus qm_table_csv(const QmTable *table, char *buf, size_t len, size_t *needed);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QECMERIT_H */
