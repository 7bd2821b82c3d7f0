#ifndef ALPHA_CHEEGER_H
#define ALPHA_CHEEGER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AcStatus {
  AC_STATUS_OK = 0,
  AC_STATUS_NULL_POINTER = 1,
  AC_STATUS_INVALID_ARGUMENT = 2,
  AC_STATUS_INVALID_ALPHA = 3,
  AC_STATUS_INVALID_CURVE = 4,
  AC_STATUS_GEOMETRY = 5,
  AC_STATUS_NUMERICAL = 6,
  AC_STATUS_OUT_OF_BOUNDS = 7,
  AC_STATUS_PANIC = 8,
} AcStatus;

typedef enum AcCase {
  AC_CASE_UNIQUE_CUT_CORNERS = 0,
  AC_CASE_UNIQUE_BOUNDARY_CASE = 1,
  AC_CASE_TOPPED_FAMILY = 2,
  AC_CASE_ANNULUS_WHOLE = 3,
  AC_CASE_ANNULUS_FAMILY = 4,
  AC_CASE_ANNULUS_TIE = 5,
} AcCase;

typedef enum AcSetKind {
  AC_SET_KIND_CUT_CORNERS = 0,
  AC_SET_KIND_TOPPED_SUBSTRIP = 1,
  AC_SET_KIND_WHOLE_DOMAIN = 2,
} AcSetKind;

// Opaque classification handle.
typedef struct AcClassification AcClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null.
const char *ac_status_message(enum AcStatus status);

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call on this thread.
const char *ac_last_error_message(void);

// Classifies `R_L`; pass `INFINITY` for the infinite strip.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum AcStatus ac_classify_rectangle(double length, double alpha, struct AcClassification **out);

// Classifies the rectangle with sides `a` and `b`, in its own units.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum AcStatus ac_classify_sides(double a, double b, double alpha, struct AcClassification **out);

// Classifies the strip or annulus around a spine given as curve-file JSON.
// `segments` is the polygon resolution; 0 selects the default.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum AcStatus ac_classify_curve_json(const char *json,
                                     double alpha,
                                     size_t segments,
                                     struct AcClassification **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `c` must come from this library and not be used afterwards.
void ac_classification_free(struct AcClassification *c);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum AcStatus ac_classification_case(const struct AcClassification *c, enum AcCase *out);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum AcStatus ac_classification_set_kind(const struct AcClassification *c, enum AcSetKind *out);

// `P / |E|^{1/α}` of the reported set. NaN for a null handle.
//
// # Safety
// `c` must be null or a live handle.
double ac_classification_h_alpha(const struct AcClassification *c);

// Area of the reported set. NaN for a null handle.
//
// # Safety
// `c` must be null or a live handle.
double ac_classification_area(const struct AcClassification *c);

// Relative perimeter of the reported set. NaN for a null handle.
//
// # Safety
// `c` must be null or a live handle.
double ac_classification_perimeter(const struct AcClassification *c);

// Diameter of the reported set. NaN for a null handle.
//
// # Safety
// `c` must be null or a live handle.
double ac_classification_diameter(const struct AcClassification *c);

// Corner radius for cut corners, body length for stadiums, NaN otherwise. NaN for a null handle.
//
// # Safety
// `c` must be null or a live handle.
double ac_classification_radius_or_m(const struct AcClassification *c);

// Whether the reported set is the only Cheeger set. False for a null handle.
//
// # Safety
// `c` must be null or a live handle.
bool ac_classification_unique(const struct AcClassification *c);

// Number of placement intervals; 0 unless the set is a stadium.
//
// # Safety
// `c` must be null or a live handle.
size_t ac_classification_placement_count(const struct AcClassification *c);

// Bounds of placement interval `index`. Unbounded ends are infinite.
//
// # Safety
// `c` must be a live handle; `lo` and `hi` must be writable.
enum AcStatus ac_classification_placement(const struct AcClassification *c,
                                          size_t index,
                                          double *lo,
                                          double *hi);

// Text report owned by the handle.
//
// # Safety
// `c` must be null or a live handle; the string dies with the handle.
const char *ac_classification_report(const struct AcClassification *c);

// JSON rendering owned by the handle.
//
// # Safety
// `c` must be null or a live handle; the string dies with the handle.
const char *ac_classification_json(const struct AcClassification *c);

// Body length of the optimal stadium.
//
// # Safety
// `out` must be writable.
enum AcStatus ac_m_of_alpha(double alpha, double *out);

// Exponent at which `R_L` switches between its two regimes.
//
// # Safety
// `out` must be writable.
enum AcStatus ac_alpha_bar(double length, double *out);

// Corner radius of the cut-corner Cheeger set of `R_L`.
//
// # Safety
// `out` must be writable.
enum AcStatus ac_corner_radius(double length, double alpha, double *out);

// `h_α(R_L)`; `INFINITY` selects the infinite strip.
//
// # Safety
// `out` must be writable.
enum AcStatus ac_h_alpha_rectangle(double length, double alpha, double *out);

// Polygon-oracle estimate of `h_α(R_L)` at `segments` chords per quarter arc.
//
// # Safety
// `out` must be writable.
enum AcStatus ac_oracle_rectangle(double length, double alpha, size_t segments, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALPHA_CHEEGER_H */
