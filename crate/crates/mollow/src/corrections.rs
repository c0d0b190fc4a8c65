//! The individual correction channels shifting the Mollow sideband
//! positions: detuning-type channels displace Δ by a parameter p, Rabi-type
//! channels rescale Ω by (1+ρ).
//!
//! Every channel is returned both as a first-order sideband shift and as a
//! "summed" replacement of Δ or Ω:
//!
//! * detuning-type: δω̄₊ = sqrt(Ω² + (Δ−p)²) − sqrt(Ω² + Δ²),
//! * Rabi-type:     δω̄₊ = sqrt(Ω²(1+ρ)² + Δ²) − sqrt(Ω² + Δ²),
//!
//! with δω̄₋ = −δω̄₊ in both cases. Expanding a summed form to first order
//! in its parameter reproduces the first-order expression; the residual is
//! second order.
//!
//! Uncertainty rules are documented on each channel constructor.

use serde::Serialize;

use crate::constants::{Hz, PhysicalConstants};
use crate::dressed::generalized_rabi;
use crate::green::{off_resonant_d, OffResonantD};
use crate::hydrogen::{dirac_fine_structure, TransitionSpec};
use crate::spectrum::DriveParams;
use crate::uncertain::UncertainValue;
use crate::Result;

/// How a channel enters the sideband formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    /// Displaces the detuning, Δ → Δ − p (parameter in Hz).
    Detuning,
    /// Rescales the Rabi frequency, Ω → Ω(1+ρ) (parameter dimensionless).
    Rabi,
}

/// Channel identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelId {
    Relativistic,
    BareLamb,
    BlochSiegert,
    OffResonant,
    RelativisticDipole,
    FieldConfiguration,
    CTerm,
    TransitionDipole,
    Secular,
}

impl ChannelId {
    /// Short code used in tabular output.
    pub fn code(&self) -> &'static str {
        match self {
            ChannelId::Relativistic => "REL",
            ChannelId::BareLamb => "LAMB",
            ChannelId::BlochSiegert => "BS",
            ChannelId::OffResonant => "OR",
            ChannelId::RelativisticDipole => "R",
            ChannelId::FieldConfiguration => "F",
            ChannelId::CTerm => "C",
            ChannelId::TransitionDipole => "TDM",
            ChannelId::Secular => "S",
        }
    }
}

/// One correction channel: its parameter (Hz for detuning-type,
/// dimensionless for Rabi-type) and the summed shift of the ω₊ sideband.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrectionChannel {
    pub id: ChannelId,
    pub kind: ChannelKind,
    pub parameter: UncertainValue,
    pub shift_plus: UncertainValue,
    /// False for channels the aggregate detuning convention absorbs
    /// (the relativistic resonance-frequency shift).
    pub in_aggregate: bool,
    /// False when the channel was evaluated outside its validity regime.
    pub validity_ok: bool,
}

impl CorrectionChannel {
    pub(crate) fn detuning(
        id: ChannelId,
        d: &DriveParams,
        p: UncertainValue,
        in_aggregate: bool,
        validity_ok: bool,
    ) -> Self {
        let shift = summed_detuning_shift(d, p.value);
        // d(shift)/dp = −(Δ−p)/sqrt(Ω² + (Δ−p)²)
        let dp = d.delta() - p.value;
        let slope = -dp / generalized_rabi(d.omega(), dp);
        Self {
            id,
            kind: ChannelKind::Detuning,
            parameter: p,
            shift_plus: UncertainValue::new(shift, slope.abs() * p.sigma),
            in_aggregate,
            validity_ok,
        }
    }

    pub(crate) fn rabi(
        id: ChannelId,
        d: &DriveParams,
        rho: UncertainValue,
        validity_ok: bool,
    ) -> Self {
        let shift = summed_rabi_shift(d, rho.value);
        // d(shift)/dρ = Ω²(1+ρ)/sqrt(Ω²(1+ρ)² + Δ²)
        let om = d.omega() * (1.0 + rho.value);
        let slope = d.omega() * om / generalized_rabi(om, d.delta());
        Self {
            id,
            kind: ChannelKind::Rabi,
            parameter: rho,
            shift_plus: UncertainValue::new(shift, slope.abs() * rho.sigma),
            in_aggregate: true,
            validity_ok,
        }
    }

    /// Shift of the ω₋ sideband; the antisymmetric partner of `shift_plus`.
    pub fn shift_minus(&self) -> UncertainValue {
        -self.shift_plus
    }

    /// Summed shift with the channel parameter scaled by `s` (used for the
    /// series-consistency checks).
    pub fn summed_shift_at_scale(&self, d: &DriveParams, s: f64) -> Hz {
        match self.kind {
            ChannelKind::Detuning => summed_detuning_shift(d, s * self.parameter.value),
            ChannelKind::Rabi => summed_rabi_shift(d, s * self.parameter.value),
        }
    }

    /// First-order shift with the channel parameter scaled by `s`.
    pub fn first_order_shift_at_scale(&self, d: &DriveParams, s: f64) -> Hz {
        match self.kind {
            ChannelKind::Detuning => first_order_detuning_shift(d, s * self.parameter.value),
            ChannelKind::Rabi => first_order_rabi_shift(d, s * self.parameter.value),
        }
    }

    /// First-order shift at the channel's own parameter.
    pub fn first_order_shift_plus(&self, d: &DriveParams) -> Hz {
        self.first_order_shift_at_scale(d, 1.0)
    }
}

/// Summed detuning-type shift sqrt(Ω² + (Δ−p)²) − sqrt(Ω² + Δ²).
pub fn summed_detuning_shift(d: &DriveParams, p: Hz) -> Hz {
    generalized_rabi(d.omega(), d.delta() - p) - d.omega_r()
}

/// First-order detuning-type shift −(Δ/Ω_R)·p.
pub fn first_order_detuning_shift(d: &DriveParams, p: Hz) -> Hz {
    -d.delta() / d.omega_r() * p
}

/// Summed Rabi-type shift sqrt(Ω²(1+ρ)² + Δ²) − sqrt(Ω² + Δ²).
pub fn summed_rabi_shift(d: &DriveParams, rho: f64) -> Hz {
    generalized_rabi(d.omega() * (1.0 + rho), d.delta()) - d.omega_r()
}

/// First-order Rabi-type shift +(Ω²/Ω_R)·ρ.
pub fn first_order_rabi_shift(d: &DriveParams, rho: f64) -> Hz {
    d.omega() * d.omega() / d.omega_r() * rho
}

/// Relativistic fine-structure displacement of the resonance frequency,
/// E_rel^(j) = ⟨H_rel⟩_2P_j − ⟨H_rel⟩_1S, from Dirac-energy differences at
/// order (Zα)⁴.
///
/// This channel is computed but excluded from the aggregate: the detuning
/// is defined against the fine-structure-resolved transition frequency, so
/// the aggregate absorbs it (see [`crate::prediction`]). Uncertainty:
/// neglected (Zα)⁶ terms, estimated as (Zα)²·E_rel.
pub fn relativistic_detuning(
    c: &PhysicalConstants,
    j2: u32,
    d: &DriveParams,
) -> Result<CorrectionChannel> {
    let e_rel = relativistic_energy(c, j2)?;
    let p = UncertainValue::new(e_rel, c.zalpha2() * e_rel.abs());
    Ok(CorrectionChannel::detuning(ChannelId::Relativistic, d, p, false, true))
}

/// E_rel^(j): the difference of the (Zα)⁴ fine-structure parts of the
/// Dirac energies of 2P_j and 1S_{1/2}.
pub fn relativistic_energy(c: &PhysicalConstants, j2: u32) -> Result<Hz> {
    Ok(dirac_fine_structure(c, 2, j2)? - dirac_fine_structure(c, 1, 1)?)
}

/// Bare-Lamb-shift channel: p = L_bare = L_2P_j − L_1S. The summed form is
/// the meaningful one here; L_bare is not small against Δ, so first-order
/// and summed values differ substantially.
pub fn bare_lamb(spec: &TransitionSpec, d: &DriveParams) -> CorrectionChannel {
    CorrectionChannel::detuning(ChannelId::BareLamb, d, spec.l_bare(), true, true)
}

/// Bloch–Siegert channel from the counter-rotating coupling:
/// p = B·Ω² with B = 1/(4ω_res).
///
/// Uncertainty: neglected terms of relative order O(max(Δ,Ω)/ω_L),
/// estimated as |p|·max(|Δ|,Ω)/ω_L. Valid for Ω, Δ ≪ ω_L.
pub fn bloch_siegert(c: &PhysicalConstants, d: &DriveParams) -> CorrectionChannel {
    let b = 0.25 / c.resonance_frequency();
    let p = b * d.omega() * d.omega();
    let rel = d.omega().max(d.delta().abs()) / d.omega_laser();
    let validity_ok = rel < 1e-2;
    CorrectionChannel::detuning(
        ChannelId::BlochSiegert,
        d,
        UncertainValue::new(p, p.abs() * rel),
        true,
        validity_ok,
    )
}

/// First-order Bloch–Siegert sideband shift from the exact second-order
/// expression (before the Ω, Δ ≪ ω_L approximation):
/// δω₊ = 2·(Ω²/ω_L)·[8cos2θ − (Ω_R/ω_L)(3+cos4θ)]/(64 − 16(Ω_R/ω_L)²).
pub fn bloch_siegert_exact_first_order(d: &DriveParams) -> Hz {
    let omega_r = d.omega_r();
    let omega_l = d.omega_laser();
    let cos2t = -d.delta() / omega_r;
    let cos4t = 2.0 * cos2t * cos2t - 1.0;
    let ratio = omega_r / omega_l;
    2.0 * d.omega() * d.omega() / omega_l * (8.0 * cos2t - ratio * (3.0 + cos4t))
        / (64.0 - 16.0 * ratio * ratio)
}

/// The off-resonant stimulated channel together with the coefficient D and
/// the one-photon ionization rate it implies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OffResonantCorrection {
    pub channel: CorrectionChannel,
    /// Re(D)·ω_res (dimensionless).
    pub d_re_times_omega: UncertainValue,
    /// Im(D)·ω_res (dimensionless, negative).
    pub d_im_times_omega: UncertainValue,
    /// Ionization rate I = |Im D|·Ω² in Hz.
    pub ionization_rate: Hz,
    /// I/Ω (dimensionless).
    pub ionization_ratio: f64,
    /// True when the conjugate square-root branch was required.
    pub branch_conjugated: bool,
}

/// Uncertainty digits assigned to D·ω_res for the neglected O(Δ/ω_res,
/// Ω/ω_res) terms in the virtual-state energies; adopted as data.
pub const D_RE_SIGMA: f64 = 3.0e-4;
pub const D_IM_SIGMA: f64 = 6.0e-6;

/// Off-resonant stimulated radiative channel: p = Re(D)·Ω². Also reports
/// the ionization rate |Im D|·Ω². Valid for Ω, Δ ≪ ω_res.
pub fn off_resonant(c: &PhysicalConstants, d: &DriveParams) -> Result<OffResonantCorrection> {
    let d_hat: OffResonantD = off_resonant_d()?;
    off_resonant_from_coefficient(c, d, &d_hat)
}

/// Assemble the off-resonant channel from an already-computed coefficient.
pub fn off_resonant_from_coefficient(
    c: &PhysicalConstants,
    d: &DriveParams,
    d_hat: &OffResonantD,
) -> Result<OffResonantCorrection> {
    let omega_res = c.resonance_frequency();
    let om2_over_res = d.omega() * d.omega() / omega_res;
    let p = UncertainValue::new(
        d_hat.d_times_omega_res.re * om2_over_res,
        D_RE_SIGMA * om2_over_res,
    );
    let validity_ok = d.omega() < 1e-2 * omega_res && d.delta().abs() < 1e-2 * omega_res;
    let channel = CorrectionChannel::detuning(ChannelId::OffResonant, d, p, true, validity_ok);
    let ionization_rate = d_hat.d_times_omega_res.im.abs() * om2_over_res;
    Ok(OffResonantCorrection {
        channel,
        d_re_times_omega: UncertainValue::new(d_hat.d_times_omega_res.re, D_RE_SIGMA),
        d_im_times_omega: UncertainValue::new(d_hat.d_times_omega_res.im, D_IM_SIGMA),
        ionization_rate,
        ionization_ratio: ionization_rate / d.omega(),
        branch_conjugated: d_hat.branch_conjugated,
    })
}

/// Relativistic correction to the transition dipole moment: the relative
/// Rabi modification ρ = −E_j with
/// E_{1/2} = (Zα)²(13/32 + (3/2)ln2 − ln3),
/// E_{3/2} = (Zα)²(31/96 + (5/4)ln2 − (3/4)ln3).
/// Uncertainty: neglected (Zα)⁴ terms, (Zα)²·E_j.
pub fn relativistic_dipole(c: &PhysicalConstants, j2: u32) -> Result<UncertainValue> {
    let ln2 = std::f64::consts::LN_2;
    let ln3 = 3.0f64.ln();
    let e_j = match j2 {
        1 => c.zalpha2() * (13.0 / 32.0 + 1.5 * ln2 - ln3),
        3 => c.zalpha2() * (31.0 / 96.0 + 1.25 * ln2 - 0.75 * ln3),
        _ => return Err(crate::Error::InvalidLevel(format!("2j = {j2}"))),
    };
    Ok(UncertainValue::new(-e_j, c.zalpha2() * e_j))
}

/// Field-configuration correction for an atom at an anti-node of a
/// standing wave: ρ = −F with F = (Zα)²/16. Uncertainty: relative (Zα)².
pub fn field_configuration(c: &PhysicalConstants) -> UncertainValue {
    let f = c.zalpha2() / 16.0;
    UncertainValue::new(-f, c.zalpha2() * f)
}

/// The same correction rebuilt from the third-order multipole term of the
/// long-wavelength interaction: −(k²/6)·⟨1S|z x²|2P⟩/⟨1S|z|2P⟩ with
/// k = (3/8)(Zα)²m. The matrix-element ratio is (8/3)·a_B² in closed form
/// (radial factor 40/3, angular factor 1/5).
pub fn field_configuration_from_multipole(c: &PhysicalConstants) -> f64 {
    // k·a_B = (3/8)(Zα)²m · 1/((Zα)m) = (3/8)·Zα
    let k_times_abohr = 0.375 * c.zalpha();
    -(k_times_abohr * k_times_abohr / 6.0) * (8.0 / 3.0)
}

/// The naive cos(kx) expansion replaces the 1/6 multipole factor by 1/2;
/// it is three times the correct correction and is wrong.
pub fn field_configuration_naive_expansion(c: &PhysicalConstants) -> f64 {
    let k_times_abohr = 0.375 * c.zalpha();
    -(k_times_abohr * k_times_abohr / 2.0) * (8.0 / 3.0)
}

/// Dynamical dressed-state radiative channel:
/// ρ = −C_j with C_j = α(Zα)²·(5/4π)·(ln[(Zα)⁻²] − (2±2)); the (2±2)
/// estimates the unevaluated nonlogarithmic term and dominates the
/// uncertainty. Identical for both j at this order.
pub fn c_term(c: &PhysicalConstants) -> UncertainValue {
    c_term_with_estimate(c, UncertainValue::new(2.0, 2.0))
}

/// C-term with an explicit nonlogarithmic estimate; (0 ± 0) recovers the
/// pure leading logarithm.
pub fn c_term_with_estimate(c: &PhysicalConstants, estimate: UncertainValue) -> UncertainValue {
    let k5 = c.alpha * c.zalpha2() * 5.0 / (4.0 * std::f64::consts::PI);
    UncertainValue::new(-k5 * (c.log_zalpha() - estimate.value), k5 * estimate.sigma)
}

/// Logarithmic vertex coefficient of the dipole-moment correction:
/// (4/3)·ln(4/3) + 131/36.
pub fn tdm_log_constant() -> f64 {
    4.0 / 3.0 * (4.0f64 / 3.0).ln() + 131.0 / 36.0
}

/// The adopted nonlogarithmic vertex+vacuum-polarization coefficients for
/// the 2P_j dipole corrections (value, 20% uncertainty).
pub fn tdm_nonlog_input(j2: u32) -> Result<UncertainValue> {
    match j2 {
        1 => Ok(UncertainValue::new(9.2, 1.8)),
        3 => Ok(UncertainValue::new(9.3, 1.9)),
        _ => Err(crate::Error::InvalidLevel(format!("2j = {j2}"))),
    }
}

/// Radiative transition-dipole channel (vertex logarithm plus
/// nonlogarithmic vertex and vacuum polarization):
/// ρ = A_j = (α(Zα)²/π)·[ln[(Zα)⁻²]·(4/3·ln(4/3) + 131/36) − n_j] with
/// n_j the adopted nonlogarithmic input. Uncertainty from n_j only.
pub fn tdm_radiative(c: &PhysicalConstants, j2: u32) -> Result<UncertainValue> {
    let k = c.alpha * c.zalpha2() / std::f64::consts::PI;
    let nlog = tdm_nonlog_input(j2)?;
    Ok(UncertainValue::new(
        k * (c.log_zalpha() * tdm_log_constant() - nlog.value),
        k * nlog.sigma,
    ))
}

/// In the general form α(Zα)²[ln[(Zα)⁻²]·c₁ + c₂], the log coefficient of
/// the dipole correction: c₁ = (4/3·ln(4/3) + 131/36)/π ≈ 1.28.
pub fn tdm_c1_coefficient() -> f64 {
    tdm_log_constant() / std::f64::consts::PI
}

/// The matching nonlogarithmic coefficient c₂ = −n_j/π; ≈ −2.93 for
/// j = 1/2, consistent with the (−2±2)·c₁ estimate rule.
pub fn tdm_c2_coefficient(j2: u32) -> Result<f64> {
    Ok(-tdm_nonlog_input(j2)?.value / std::f64::consts::PI)
}

/// Secular-approximation channel: ρ = −S with S = (1/2)(Γ/Ω)².
/// Uncertainty: the difference to the full y-dependent leading form plus
/// the size of the dropped (Γ/Ω)⁴ term. Valid for Δ ≪ Ω.
pub fn secular_correction(d: &DriveParams) -> UncertainValue {
    let ratio2 = (d.gamma() / d.omega()).powi(2);
    let s_lead = 0.5 * ratio2;
    let s_full = secular_parameter_full(d);
    let sigma = (s_full - s_lead).abs() + ratio2 * ratio2;
    UncertainValue::new(-s_lead, sigma)
}

/// The full leading secular parameter S = (4+y²)/(8(1+y²))·(Γ/Ω)² with
/// y = Δ/Ω, before the Δ ≪ Ω expansion.
pub fn secular_parameter_full(d: &DriveParams) -> f64 {
    let y2 = (d.delta() / d.omega()).powi(2);
    (4.0 + y2) / (8.0 * (1.0 + y2)) * (d.gamma() / d.omega()).powi(2)
}

/// Imaginary first-order contribution to the sideband positions,
/// (Δ/Ω_R)·|Im D|·Ω² in Hz: a slight sideband broadening, reported
/// informationally and excluded from position aggregates.
pub fn imaginary_sideband_width(
    c: &PhysicalConstants,
    d: &DriveParams,
    d_im_times_omega: f64,
) -> Hz {
    d.delta().abs() / d.omega_r() * d_im_times_omega.abs() * d.omega() * d.omega()
        / c.resonance_frequency()
}
