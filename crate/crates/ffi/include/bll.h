#ifndef BLL_H
#define BLL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BllStatus {
  BLL_STATUS_OK = 0,
  BLL_STATUS_INVALID_INPUT = 2,
  BLL_STATUS_BUDGET_EXCEEDED = 3,
  BLL_STATUS_INTERNAL = 4,
  BLL_STATUS_NULL_POINTER = 5,
  BLL_STATUS_PANIC = 6,
} BllStatus;

/**
 * Opaque lattice handle.
 */
typedef struct BllLattice BllLattice;

/**
 * Opaque quasi-pullback report handle.
 */
typedef struct BllReport BllReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *bll_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void bll_string_free(char *s);

/**
 * Named lattice such as `"E8"`, `"A7"`, `"U"` or `"<-2>"`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum BllStatus bll_lattice_named(const char *name, struct BllLattice **out);

/**
 * Lattice from a row-major `rank × rank` symmetric Gram matrix.
 *
 * # Safety
 * `gram` must point to `rank * rank` values and `out` must be valid.
 */
enum BllStatus bll_lattice_from_gram(const int64_t *gram, size_t rank, struct BllLattice **out);

/**
 * Same as [`bll_lattice_named`] with a separate integer parameter, e.g.
 * `("A", 7)` or `("rank1", -2)`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum BllStatus bll_lattice_make(const char *name, int64_t param, struct BllLattice **out);

/**
 * # Safety
 * `l` must come from this library or be NULL.
 */
void bll_lattice_free(struct BllLattice *l);

/**
 * # Safety
 * Pointers must be valid.
 */
enum BllStatus bll_lattice_rank(const struct BllLattice *l, size_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum BllStatus bll_lattice_determinant(const struct BllLattice *l, int64_t *out);

/**
 * Number of lattice vectors of norm `norm` in a definite lattice.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BllStatus bll_count_of_norm(const struct BllLattice *l, int64_t norm, uint64_t *out);

/**
 * Quasi-pullback for `v` given by twice its eight chart coordinates, so
 * half-integral vectors are representable.
 *
 * # Safety
 * `doubled_chart` must point to 8 values and `out` must be valid.
 */
enum BllStatus bll_quasi_pullback(int64_t g, const int64_t *doubled_chart, struct BllReport **out);

/**
 * # Safety
 * `r` must come from this library or be NULL.
 */
void bll_report_free(struct BllReport *r);

/**
 * Root count `r`, weight `k`, `n = k − 19` and discriminant order.
 *
 * # Safety
 * `report` must be valid; any of the out-pointers may be NULL.
 */
enum BllStatus bll_report_numbers(const struct BllReport *report,
                                  uint64_t *r,
                                  uint64_t *k,
                                  int64_t *n,
                                  uint64_t *disc_order);

/**
 * Whether the q-series weight cross-check passed.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BllStatus bll_report_crosscheck(const struct BllReport *report, bool *passed);

/**
 * Root system type such as `"A1+D5"`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BllStatus bll_report_root_type(const struct BllReport *report, char **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum BllStatus bll_report_to_json(const struct BllReport *report, char **out);

/**
 * JSON array of reports for the tabulated `v_g`, `g = 2..22`.
 *
 * # Safety
 * `out` must be valid.
 */
enum BllStatus bll_paper_table_json(char **out);

/**
 * Heegner ledger as JSON. `polarized` selects the sign of `q` read on `Λ_g`.
 *
 * # Safety
 * `doubled_chart` must point to 8 values and `out` must be valid.
 */
enum BllStatus bll_heegner_ledger_json(int64_t g,
                                       const int64_t *doubled_chart,
                                       bool polarized,
                                       char **out);

/**
 * Number of divisibility classes of (−2)-vectors in `Λ_g`.
 *
 * # Safety
 * `out` must be valid.
 */
enum BllStatus bll_eichler_orbit_count(int64_t g, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLL_H */
