//! C ABI for the mollow library.
//!
//! The interface follows the usual opaque-handle pattern: create a
//! [`MollowContext`] (default data or a key=value constants file), query it
//! through plain functions returning [`MollowStatus`] codes with results in
//! out-pointers, and free it with [`mollow_context_free`]. The header
//! `include/mollow.h` is generated by cbindgen at build time.
//!
//! Frequencies are ordinary hertz throughout; transitions are selected by
//! the doubled angular momentum `j2` (1 for 2P_1/2, 3 for 2P_3/2).

use std::ffi::{c_char, CStr};
use std::path::Path;
use std::ptr;

use mollow::config::Inputs;
use mollow::corrections::ChannelId;
use mollow::prediction::{aggregate, h_from_field, table_one};
use mollow::spectrum::{find_peaks_numeric, spectrum_exact, DriveParams};
use mollow::Error;

/// Opaque evaluation context holding constants and transition data.
pub struct MollowContext {
    inputs: Inputs,
}

/// Status codes returned by every evaluation function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MollowStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Constants file missing, malformed, or with unknown keys.
    ConfigError = 2,
    /// A numeric evaluation failed (pole, no convergence, unresolved peaks,
    /// branch validation).
    NumericError = 3,
    /// An argument was out of range (unknown j2, invalid drive).
    InvalidArgument = 4,
}

fn status_of(err: &Error) -> MollowStatus {
    match err {
        Error::Config(_) | Error::Io(_) => MollowStatus::ConfigError,
        Error::InvalidLevel(_)
        | Error::UnsupportedLevelPair(_)
        | Error::InvalidDrive(_)
        | Error::InvalidRunConfig(_) => MollowStatus::InvalidArgument,
        _ => MollowStatus::NumericError,
    }
}

/// A value with its one-sigma uncertainty.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MollowUncertain {
    pub value: f64,
    pub sigma: f64,
}

impl From<mollow::UncertainValue> for MollowUncertain {
    fn from(u: mollow::UncertainValue) -> Self {
        Self { value: u.value, sigma: u.sigma }
    }
}

/// The corrected sideband prediction for one transition and drive.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MollowPrediction {
    /// Corrected generalized Rabi frequency, Hz.
    pub omega_c_hz: MollowUncertain,
    /// The same with the dynamical C-term removed, Hz.
    pub omega_no_c_hz: MollowUncertain,
    /// Uncorrected sqrt(Omega^2 + Delta^2), Hz.
    pub bare_hz: f64,
    /// omega_c - bare, Hz.
    pub headline_hz: MollowUncertain,
    /// Radiative detuning displacement, Hz.
    pub delta_rad_hz: MollowUncertain,
    /// Relative Rabi modification (dimensionless).
    pub omega_hat_rad: MollowUncertain,
    /// Off-resonant coefficient times the resonance frequency.
    pub d_re_times_omega: MollowUncertain,
    pub d_im_times_omega: MollowUncertain,
    /// One-photon ionization rate, Hz, and its ratio to Omega.
    pub ionization_rate_hz: f64,
    pub ionization_ratio: f64,
    /// 1 when the Green-function branch had to be conjugated.
    pub branch_conjugated: u8,
}

/// The three maxima of the exact incoherent spectrum, as offsets from the
/// laser frequency in Hz.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MollowPeaks {
    pub plus_offset_hz: f64,
    pub center_offset_hz: f64,
    pub minus_offset_hz: f64,
}

/// Correction channels exposed through [`mollow_table_shift`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MollowChannel {
    BareLamb = 0,
    BlochSiegert = 1,
    OffResonant = 2,
    RelativisticDipole = 3,
    FieldConfiguration = 4,
    CTerm = 5,
    TransitionDipole = 6,
    Secular = 7,
    /// Computed but excluded from the aggregate detuning convention.
    Relativistic = 8,
}

impl MollowChannel {
    fn id(&self) -> ChannelId {
        match self {
            MollowChannel::BareLamb => ChannelId::BareLamb,
            MollowChannel::BlochSiegert => ChannelId::BlochSiegert,
            MollowChannel::OffResonant => ChannelId::OffResonant,
            MollowChannel::RelativisticDipole => ChannelId::RelativisticDipole,
            MollowChannel::FieldConfiguration => ChannelId::FieldConfiguration,
            MollowChannel::CTerm => ChannelId::CTerm,
            MollowChannel::TransitionDipole => ChannelId::TransitionDipole,
            MollowChannel::Secular => ChannelId::Secular,
            MollowChannel::Relativistic => ChannelId::Relativistic,
        }
    }
}

/// Create a context with the built-in default constants and transition
/// data. Returns null only on allocation failure.
#[no_mangle]
pub extern "C" fn mollow_context_default() -> *mut MollowContext {
    Box::into_raw(Box::new(MollowContext { inputs: Inputs::default() }))
}

/// Create a context from a key=value constants file. Returns null when the
/// file cannot be read or parsed; use [`mollow_context_default`] plus the
/// documented defaults when no overrides are needed.
///
/// # Safety
/// `path` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mollow_context_from_file(path: *const c_char) -> *mut MollowContext {
    if path.is_null() {
        return ptr::null_mut();
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return ptr::null_mut();
    };
    match Inputs::from_file(Path::new(path)) {
        Ok(inputs) => Box::into_raw(Box::new(MollowContext { inputs })),
        Err(_) => ptr::null_mut(),
    }
}

/// Destroy a context created by the constructors above. Null is ignored.
///
/// # Safety
/// `ctx` must be a pointer previously returned by a constructor and not
/// freed since.
#[no_mangle]
pub unsafe extern "C" fn mollow_context_free(ctx: *mut MollowContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

unsafe fn ctx_ref<'a>(ctx: *const MollowContext) -> Option<&'a MollowContext> {
    ctx.as_ref()
}

fn drive_of(ctx: &MollowContext, j2: u32, h: f64, dog: f64) -> Result<DriveParams, Error> {
    let spec = ctx.inputs.transition(j2)?;
    DriveParams::for_transition(&ctx.inputs.constants, spec, h, dog)
}

/// Schrödinger 1S–2P resonance frequency (3/8)(Zα)²m, Hz.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mollow_resonance_frequency(
    ctx: *const MollowContext,
    out: *mut f64,
) -> MollowStatus {
    let (Some(ctx), false) = (ctx_ref(ctx), out.is_null()) else {
        return MollowStatus::NullArgument;
    };
    *out = ctx.inputs.constants.resonance_frequency();
    MollowStatus::Ok
}

/// Exact incoherent spectral density (1/Hz) at offset `omega_offset_hz`
/// from the laser, for drive h = Omega/Gamma and detuning
/// `delta_over_gamma` (units of Gamma).
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mollow_spectrum_exact(
    ctx: *const MollowContext,
    j2: u32,
    h: f64,
    delta_over_gamma: f64,
    omega_offset_hz: f64,
    out: *mut f64,
) -> MollowStatus {
    let (Some(ctx), false) = (ctx_ref(ctx), out.is_null()) else {
        return MollowStatus::NullArgument;
    };
    match drive_of(ctx, j2, h, delta_over_gamma) {
        Ok(d) => {
            *out = spectrum_exact(d.omega_laser() + omega_offset_hz, &d);
            MollowStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Numerically located maxima of the exact spectrum.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mollow_peaks(
    ctx: *const MollowContext,
    j2: u32,
    h: f64,
    delta_over_gamma: f64,
    out: *mut MollowPeaks,
) -> MollowStatus {
    let (Some(ctx), false) = (ctx_ref(ctx), out.is_null()) else {
        return MollowStatus::NullArgument;
    };
    let result = drive_of(ctx, j2, h, delta_over_gamma).and_then(|d| {
        let p = find_peaks_numeric(&d)?;
        Ok(MollowPeaks {
            plus_offset_hz: p.omega_plus - d.omega_laser(),
            center_offset_hz: p.omega_center - d.omega_laser(),
            minus_offset_hz: p.omega_minus - d.omega_laser(),
        })
    });
    match result {
        Ok(p) => {
            *out = p;
            MollowStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Full corrected prediction for one transition and drive.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mollow_prediction(
    ctx: *const MollowContext,
    j2: u32,
    h: f64,
    delta_over_gamma: f64,
    out: *mut MollowPrediction,
) -> MollowStatus {
    let (Some(ctx), false) = (ctx_ref(ctx), out.is_null()) else {
        return MollowStatus::NullArgument;
    };
    let result = (|| {
        let spec = ctx.inputs.transition(j2)?;
        let d = drive_of(ctx, j2, h, delta_over_gamma)?;
        aggregate(&ctx.inputs.constants, spec, &d)
    })();
    match result {
        Ok(b) => {
            *out = MollowPrediction {
                omega_c_hz: b.omega_c.into(),
                omega_no_c_hz: b.omega_no_c.into(),
                bare_hz: b.bare,
                headline_hz: b.headline.into(),
                delta_rad_hz: b.delta_rad.into(),
                omega_hat_rad: b.omega_hat_rad.into(),
                d_re_times_omega: b.d_re_times_omega.into(),
                d_im_times_omega: b.d_im_times_omega.into(),
                ionization_rate_hz: b.ionization_rate,
                ionization_ratio: b.ionization_ratio,
                branch_conjugated: b.branch_conjugated as u8,
            };
            MollowStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Summed shift of the high-frequency sideband for one channel, Hz.
///
/// # Safety
/// `ctx`, `out_value` and `out_sigma` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mollow_table_shift(
    ctx: *const MollowContext,
    channel: MollowChannel,
    j2: u32,
    h: f64,
    delta_over_gamma: f64,
    out_value: *mut f64,
    out_sigma: *mut f64,
) -> MollowStatus {
    let (Some(ctx), false) = (ctx_ref(ctx), out_value.is_null() || out_sigma.is_null()) else {
        return MollowStatus::NullArgument;
    };
    let result = (|| {
        let spec = ctx.inputs.transition(j2)?;
        let d = drive_of(ctx, j2, h, delta_over_gamma)?;
        let b = aggregate(&ctx.inputs.constants, spec, &d)?;
        b.channels
            .iter()
            .find(|ch| ch.id == channel.id())
            .map(|ch| ch.shift_plus)
            .ok_or_else(|| Error::InvalidRunConfig("unknown channel".into()))
    })();
    match result {
        Ok(shift) => {
            *out_value = shift.value;
            *out_sigma = shift.sigma;
            MollowStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Intensity parameter h = Omega/Gamma_j for a standing-wave field
/// strength in V/m.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mollow_h_from_field(
    ctx: *const MollowContext,
    j2: u32,
    e_sw_volts_per_meter: f64,
    out: *mut f64,
) -> MollowStatus {
    let (Some(ctx), false) = (ctx_ref(ctx), out.is_null()) else {
        return MollowStatus::NullArgument;
    };
    let result = ctx
        .inputs
        .transition(j2)
        .and_then(|spec| h_from_field(&ctx.inputs.constants, spec, e_sw_volts_per_meter));
    match result {
        Ok(v) => {
            *out = v;
            MollowStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Number of aggregate channels in the shift table (8: both transitions
/// give 16 entries).
///
/// # Safety
/// `ctx` must be a valid context pointer or null.
#[no_mangle]
pub unsafe extern "C" fn mollow_table_channel_count(ctx: *const MollowContext) -> usize {
    let Some(ctx) = ctx_ref(ctx) else { return 0 };
    table_one(&ctx.inputs.constants, &ctx.inputs.half, &ctx.inputs.three_half, 1000.0, 50.0)
        .map(|t| t.rows.len())
        .unwrap_or(0)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mollow_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_lifecycle_and_prediction() {
        let ctx = mollow_context_default();
        assert!(!ctx.is_null());
        let mut pred = MollowPrediction {
            omega_c_hz: MollowUncertain { value: 0.0, sigma: 0.0 },
            omega_no_c_hz: MollowUncertain { value: 0.0, sigma: 0.0 },
            bare_hz: 0.0,
            headline_hz: MollowUncertain { value: 0.0, sigma: 0.0 },
            delta_rad_hz: MollowUncertain { value: 0.0, sigma: 0.0 },
            omega_hat_rad: MollowUncertain { value: 0.0, sigma: 0.0 },
            d_re_times_omega: MollowUncertain { value: 0.0, sigma: 0.0 },
            d_im_times_omega: MollowUncertain { value: 0.0, sigma: 0.0 },
            ionization_rate_hz: 0.0,
            ionization_ratio: 0.0,
            branch_conjugated: 1,
        };
        let status = unsafe { mollow_prediction(ctx, 1, 1000.0, 50.0, &mut pred) };
        assert_eq!(status, MollowStatus::Ok);
        assert!((pred.omega_c_hz.value - 100.572_257e9).abs() < 1e6);
        assert!((pred.bare_hz - 99.833_975e9).abs() < 1e5);
        assert_eq!(pred.branch_conjugated, 0);
        unsafe { mollow_context_free(ctx) };
    }

    #[test]
    fn null_and_invalid_arguments() {
        let mut out = 0.0f64;
        let status = unsafe { mollow_resonance_frequency(ptr::null(), &mut out) };
        assert_eq!(status, MollowStatus::NullArgument);

        let ctx = mollow_context_default();
        let status =
            unsafe { mollow_spectrum_exact(ctx, 5, 1000.0, 0.0, 0.0, &mut out) };
        assert_eq!(status, MollowStatus::InvalidArgument);
        let status =
            unsafe { mollow_spectrum_exact(ctx, 1, -3.0, 0.0, 0.0, &mut out) };
        assert_eq!(status, MollowStatus::InvalidArgument);
        unsafe { mollow_context_free(ctx) };
        unsafe { mollow_context_free(ptr::null_mut()) };
    }

    #[test]
    fn peaks_report_numeric_failure_when_unresolved() {
        let ctx = mollow_context_default();
        let mut peaks = MollowPeaks {
            plus_offset_hz: 0.0,
            center_offset_hz: 0.0,
            minus_offset_hz: 0.0,
        };
        // h = 0.2: sidebands are not separated
        let status = unsafe { mollow_peaks(ctx, 1, 0.2, 0.0, &mut peaks) };
        assert_eq!(status, MollowStatus::NumericError);
        // a strong drive resolves them
        let status = unsafe { mollow_peaks(ctx, 1, 1000.0, 0.0, &mut peaks) };
        assert_eq!(status, MollowStatus::Ok);
        assert!(peaks.plus_offset_hz > 0.0 && peaks.minus_offset_hz < 0.0);
        unsafe { mollow_context_free(ctx) };
    }

    #[test]
    fn version_is_nul_terminated() {
        let v = mollow_version();
        let s = unsafe { CStr::from_ptr(v) }.to_str().unwrap();
        assert_eq!(s, env!("CARGO_PKG_VERSION"));
    }
}
