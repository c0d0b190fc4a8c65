/* C interface to the mollow spectroscopy library. */

#ifndef MOLLOW_H
#define MOLLOW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Correction channels exposed through [`mollow_table_shift`].
typedef enum MollowChannel {
  MollowChannel_BareLamb = 0,
  MollowChannel_BlochSiegert = 1,
  MollowChannel_OffResonant = 2,
  MollowChannel_RelativisticDipole = 3,
  MollowChannel_FieldConfiguration = 4,
  MollowChannel_CTerm = 5,
  MollowChannel_TransitionDipole = 6,
  MollowChannel_Secular = 7,
  // Computed but excluded from the aggregate detuning convention.
  MollowChannel_Relativistic = 8,
} MollowChannel;

// Status codes returned by every evaluation function.
typedef enum MollowStatus {
  MollowStatus_Ok = 0,
  // A required pointer argument was null.
  MollowStatus_NullArgument = 1,
  // Constants file missing, malformed, or with unknown keys.
  MollowStatus_ConfigError = 2,
  // A numeric evaluation failed (pole, no convergence, unresolved peaks,
  // branch validation).
  MollowStatus_NumericError = 3,
  // An argument was out of range (unknown j2, invalid drive).
  MollowStatus_InvalidArgument = 4,
} MollowStatus;

// Opaque evaluation context holding constants and transition data.
typedef struct MollowContext MollowContext;

// The three maxima of the exact incoherent spectrum, as offsets from the
// laser frequency in Hz.
typedef struct MollowPeaks {
  double plus_offset_hz;
  double center_offset_hz;
  double minus_offset_hz;
} MollowPeaks;

// A value with its one-sigma uncertainty.
typedef struct MollowUncertain {
  double value;
  double sigma;
} MollowUncertain;

// The corrected sideband prediction for one transition and drive.
typedef struct MollowPrediction {
  // Corrected generalized Rabi frequency, Hz.
  struct MollowUncertain omega_c_hz;
  // The same with the dynamical C-term removed, Hz.
  struct MollowUncertain omega_no_c_hz;
  // Uncorrected sqrt(Omega^2 + Delta^2), Hz.
  double bare_hz;
  // omega_c - bare, Hz.
  struct MollowUncertain headline_hz;
  // Radiative detuning displacement, Hz.
  struct MollowUncertain delta_rad_hz;
  // Relative Rabi modification (dimensionless).
  struct MollowUncertain omega_hat_rad;
  // Off-resonant coefficient times the resonance frequency.
  struct MollowUncertain d_re_times_omega;
  struct MollowUncertain d_im_times_omega;
  // One-photon ionization rate, Hz, and its ratio to Omega.
  double ionization_rate_hz;
  double ionization_ratio;
  // 1 when the Green-function branch had to be conjugated.
  uint8_t branch_conjugated;
} MollowPrediction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a context with the built-in default constants and transition
// data. Returns null only on allocation failure.
struct MollowContext *mollow_context_default(void);

// Create a context from a key=value constants file. Returns null when the
// file cannot be read or parsed; use [`mollow_context_default`] plus the
// documented defaults when no overrides are needed.
//
// # Safety
// `path` must be a valid NUL-terminated string.
struct MollowContext *mollow_context_from_file(const char *path);

// Destroy a context created by the constructors above. Null is ignored.
//
// # Safety
// `ctx` must be a pointer previously returned by a constructor and not
// freed since.
void mollow_context_free(struct MollowContext *ctx);

// Schrödinger 1S–2P resonance frequency (3/8)(Zα)²m, Hz.
//
// # Safety
// `ctx` and `out` must be valid pointers.
enum MollowStatus mollow_resonance_frequency(const struct MollowContext *ctx, double *out);

// Exact incoherent spectral density (1/Hz) at offset `omega_offset_hz`
// from the laser, for drive h = Omega/Gamma and detuning
// `delta_over_gamma` (units of Gamma).
//
// # Safety
// `ctx` and `out` must be valid pointers.
enum MollowStatus mollow_spectrum_exact(const struct MollowContext *ctx,
                                        uint32_t j2,
                                        double h,
                                        double delta_over_gamma,
                                        double omega_offset_hz,
                                        double *out);

// Numerically located maxima of the exact spectrum.
//
// # Safety
// `ctx` and `out` must be valid pointers.
enum MollowStatus mollow_peaks(const struct MollowContext *ctx,
                               uint32_t j2,
                               double h,
                               double delta_over_gamma,
                               struct MollowPeaks *out);

// Full corrected prediction for one transition and drive.
//
// # Safety
// `ctx` and `out` must be valid pointers.
enum MollowStatus mollow_prediction(const struct MollowContext *ctx,
                                    uint32_t j2,
                                    double h,
                                    double delta_over_gamma,
                                    struct MollowPrediction *out);

// Summed shift of the high-frequency sideband for one channel, Hz.
//
// # Safety
// `ctx`, `out_value` and `out_sigma` must be valid pointers.
enum MollowStatus mollow_table_shift(const struct MollowContext *ctx,
                                     enum MollowChannel channel,
                                     uint32_t j2,
                                     double h,
                                     double delta_over_gamma,
                                     double *out_value,
                                     double *out_sigma);

// Intensity parameter h = Omega/Gamma_j for a standing-wave field
// strength in V/m.
//
// # Safety
// `ctx` and `out` must be valid pointers.
enum MollowStatus mollow_h_from_field(const struct MollowContext *ctx,
                                      uint32_t j2,
                                      double e_sw_volts_per_meter,
                                      double *out);

// Number of aggregate channels in the shift table (8: both transitions
// give 16 entries).
//
// # Safety
// `ctx` must be a valid context pointer or null.
size_t mollow_table_channel_count(const struct MollowContext *ctx);

// Library version as a static NUL-terminated string.
const char *mollow_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOLLOW_H */
