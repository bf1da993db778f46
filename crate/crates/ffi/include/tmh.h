#ifndef TMH_H
#define TMH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TmhPsc {
  TMH_PSC_EXISTS = 0,
  TMH_PSC_OBSTRUCTED = 1,
  /**
   * Not spin, or real dimension below 5.
   */
  TMH_PSC_INAPPLICABLE = 2,
} TmhPsc;

typedef enum TmhStatus {
  TMH_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TMH_STATUS_NULL_POINTER = 1,
  /**
   * Bad shape: `n1` or `n2` is zero, or the twist length differs from `n2`.
   */
  TMH_STATUS_INVALID_INPUT = 2,
  /**
   * The hypersurface is not spin and the quantity needs a spin structure.
   */
  TMH_STATUS_NOT_SPIN = 3,
  /**
   * Any other mathematical precondition failed.
   */
  TMH_STATUS_DOMAIN = 4,
  /**
   * An internal panic was caught.
   */
  TMH_STATUS_PANIC = 5,
} TmhStatus;

/**
 * Opaque bundle of every computed invariant of one hypersurface.
 */
typedef struct TmhReport TmhReport;

/**
 * Opaque hypersurface description.
 */
typedef struct TmhSpec TmhSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *tmh_last_error(void);

/**
 * Builds a hypersurface spec. `twist` may be NULL when `twist_len` is 0.
 *
 * # Safety
 * `twist` must point to `twist_len` readable values; `out` must be writable.
 */
enum TmhStatus tmh_spec_new(uint32_t n1,
                            uint32_t n2,
                            const int64_t *twist,
                            size_t twist_len,
                            int64_t d1,
                            int64_t d2,
                            struct TmhSpec **out);

/**
 * # Safety
 * `spec` must be NULL or a handle from `tmh_spec_new` not yet freed.
 */
void tmh_spec_free(struct TmhSpec *spec);

/**
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum TmhStatus tmh_spec_is_spin(const struct TmhSpec *spec, bool *out);

/**
 * Real dimension `2(n1 + n2) - 2`.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum TmhStatus tmh_spec_dim_real(const struct TmhSpec *spec, uint64_t *out);

/**
 * Â-genus as a decimal string, `"p"` or `"p/q"`. Free with
 * `tmh_string_free`.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum TmhStatus tmh_a_hat(const struct TmhSpec *spec, char **out);

/**
 * α-invariant: writes the degree mod 8 and the value as a string (an
 * integer for Z, `"0"`/`"1"` for Z/2), or NULL when the group is trivial.
 * Returns `TMH_STATUS_NOT_SPIN` for non-spin hypersurfaces.
 *
 * # Safety
 * `spec` must be a live handle; both out-pointers must be writable.
 */
enum TmhStatus tmh_alpha(const struct TmhSpec *spec, uint8_t *out_n_mod_8, char **out_value);

/**
 * Computes every invariant at once.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum TmhStatus tmh_report_new(const struct TmhSpec *spec, struct TmhReport **out);

/**
 * # Safety
 * `report` must be NULL or a handle from `tmh_report_new` not yet freed.
 */
void tmh_report_free(struct TmhReport *report);

/**
 * The report as one compact JSON object. Free with `tmh_string_free`.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum TmhStatus tmh_report_json(const struct TmhReport *report, char **out);

/**
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum TmhStatus tmh_report_psc(const struct TmhReport *report, enum TmhPsc *out);

/**
 * True when a nontrivial smooth circle action is ruled out (spin and
 * Â ≠ 0).
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum TmhStatus tmh_report_no_circle_action(const struct TmhReport *report, bool *out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void tmh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TMH_H */
