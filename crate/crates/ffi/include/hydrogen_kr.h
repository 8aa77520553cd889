#ifndef HYDROGEN_KR_H
#define HYDROGEN_KR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HkrConvention {
  // Unit marginals.
  HKR_CONVENTION_MARGINAL_EXACT = 0,
  // Constants of the published figures (an extra `(2π)^{-3/2}`).
  HKR_CONVENTION_PAPER_FIGURE = 1,
} HkrConvention;

typedef enum HkrFormat {
  HKR_FORMAT_CSV = 0,
  HKR_FORMAT_JSON = 1,
} HkrFormat;

typedef enum HkrQuantity {
  HKR_QUANTITY_RE = 0,
  HKR_QUANTITY_IM = 1,
  HKR_QUANTITY_ABS = 2,
  HKR_QUANTITY_ABS2 = 3,
  HKR_QUANTITY_COMPLEX = 4,
} HkrQuantity;

// Result code of every fallible call.
typedef enum HkrStatus {
  HKR_STATUS_OK = 0,
  HKR_STATUS_NULL_POINTER = 1,
  HKR_STATUS_INVALID_ARGUMENT = 2,
  HKR_STATUS_OUT_OF_DOMAIN = 3,
  HKR_STATUS_UNSUPPORTED = 4,
  HKR_STATUS_IO = 5,
  HKR_STATUS_PARSE = 6,
  HKR_STATUS_PANIC = 7,
} HkrStatus;

// Sampled slice (opaque).
typedef struct HkrSlice HkrSlice;

// Uniformly tabulated 1-D wavefunction (opaque).
typedef struct HkrTabulated1D HkrTabulated1D;

// Bound state `(n, l, m)` in the field of nuclear charge `z`.
typedef struct HkrState {
  int32_t n;
  int32_t l;
  int32_t m;
  double z;
} HkrState;

typedef struct HkrComplex {
  double re;
  double im;
} HkrComplex;

// Phase-space point in spherical coordinates.
typedef struct HkrPhasePoint {
  double r;
  double theta;
  double phi;
  double p;
  double theta_p;
  double phi_p;
} HkrPhasePoint;

// Cross-section of K at fixed angles over an `(r, p)` rectangle.
typedef struct HkrSliceSpec {
  struct HkrState state;
  double theta;
  double phi;
  double theta_p;
  double phi_p;
  double r_min;
  double r_max;
  double p_min;
  double p_max;
  size_t n_r;
  size_t n_p;
  enum HkrQuantity quantity;
  enum HkrConvention convention;
  // Nonzero to multiply values by `(2π)³`.
  int32_t paper_scale;
} HkrSliceSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *hkr_version(void);

// Message describing the most recent failure on this thread, or NULL if
// none. Valid until the next failing call on the same thread.
const char *hkr_last_error_message(void);

// `R_nl(r)`.
enum HkrStatus hkr_radial_position(struct HkrState state, double r, double *out_value);

// `F_nl(p)`.
enum HkrStatus hkr_radial_momentum(struct HkrState state, double p, double *out_value);

// `ψ(r, θ, φ)`.
enum HkrStatus hkr_psi_position(struct HkrState state,
                                double r,
                                double theta,
                                double phi,
                                struct HkrComplex *out_value);

// `ψ̃(p, θ', φ')`, including the `(-i)^l` phase.
enum HkrStatus hkr_psi_momentum(struct HkrState state,
                                double p,
                                double theta_p,
                                double phi_p,
                                struct HkrComplex *out_value);

// K-R distribution at one phase-space point.
enum HkrStatus hkr_kr_hydrogen(struct HkrState state,
                               const struct HkrPhasePoint *point,
                               enum HkrConvention convention,
                               struct HkrComplex *out_value);

// Fills `out_spec` with the default slice for `state`: equatorial angles,
// `r ∈ [0, 5n²/Z]`, `p ∈ [0, 4Z/n]`, 256 × 256, `|K|`, unit marginals.
enum HkrStatus hkr_slice_spec_default(struct HkrState state, struct HkrSliceSpec *out_spec);

// Samples a slice. Release the handle with [`hkr_slice_free`].
enum HkrStatus hkr_slice_new(const struct HkrSliceSpec *spec, struct HkrSlice **out_slice);

// Releases a slice handle.
void hkr_slice_free(struct HkrSlice *slice);

// Grid dimensions `(n_r, n_p)`.
enum HkrStatus hkr_slice_dims(const struct HkrSlice *slice, size_t *out_n_r, size_t *out_n_p);

// Number of warnings attached to the slice (e.g. a vanishing harmonic).
enum HkrStatus hkr_slice_warning_count(const struct HkrSlice *slice, size_t *out_count);

// Grid value at `(i_r, i_p)`. Real quantities report `im = 0`.
enum HkrStatus hkr_slice_value(const struct HkrSlice *slice,
                               size_t i_r,
                               size_t i_p,
                               struct HkrComplex *out_value);

// Copies the axes into caller buffers of at least `n_r` and `n_p` doubles.
enum HkrStatus hkr_slice_axes(const struct HkrSlice *slice,
                              double *r_axis,
                              size_t r_len,
                              double *p_axis,
                              size_t p_len);

// Number of local maxima of `|K|` (slice quantity must be `abs` or `abs2`).
enum HkrStatus hkr_slice_count_maxima(const struct HkrSlice *slice, size_t *out_count);

// Writes the slice as CSV or JSON; `reproducible != 0` omits the timestamp.
enum HkrStatus hkr_slice_write(const struct HkrSlice *slice,
                               const char *path,
                               enum HkrFormat format,
                               int32_t reproducible);

// Builds a tabulated state from `len` samples at uniform abscissas `q`.
// Release the handle with [`hkr_tabulated_free`].
enum HkrStatus hkr_tabulated_new(const double *q,
                                 const double *re,
                                 const double *im,
                                 size_t len,
                                 struct HkrTabulated1D **out_state);

// Reads a tabulated state from a `q,re,im` CSV file.
enum HkrStatus hkr_tabulated_from_csv(const char *path, struct HkrTabulated1D **out_state);

// Releases a tabulated state.
void hkr_tabulated_free(struct HkrTabulated1D *state);

// 1-D K-R distribution `Ψ(q) e^{-ipq} conj(Ψ̃(p))`.
enum HkrStatus hkr_kr_1d(const struct HkrTabulated1D *state,
                         double q,
                         double p,
                         struct HkrComplex *out_value);

// 1-D Wigner function.
enum HkrStatus hkr_wigner_1d(const struct HkrTabulated1D *state,
                             double q,
                             double p,
                             double *out_value);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HYDROGEN_KR_H */
