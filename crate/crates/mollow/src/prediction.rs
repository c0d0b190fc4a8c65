//! Aggregation of the correction channels into the corrected sideband
//! prediction: the radiative detuning Δ_rad, the relative Rabi
//! modification Ω̂_rad, the corrected generalized Rabi frequency
//! Ω_C = sqrt(Ω²(1+Ω̂_rad)² + (Δ−Δ_rad)²), the per-channel shift table,
//! and the with/without-C-term comparison.
//!
//! The detuning is understood as measured against the fine-structure- and
//! hyperfine-resolved transition frequency (the experimental convention),
//! so Δ_rad contains only the Lamb, Bloch–Siegert and off-resonant
//! displacements: Δ_rad = L_bare + B·Ω² + Re(D)·Ω². The relativistic
//! fine-structure channel is still computed and reported, excluded from
//! the aggregate.

use serde::Serialize;

use crate::constants::{Hz, PhysicalConstants};
use crate::corrections::{
    self, bare_lamb, bloch_siegert, c_term, field_configuration, off_resonant,
    relativistic_detuning, relativistic_dipole, secular_correction, tdm_radiative, ChannelId,
    CorrectionChannel,
};
use crate::dressed::mixing_angle;
use crate::hydrogen::{dipole_z, HydrogenLevel, TransitionSpec};
use crate::spectrum::DriveParams;
use crate::uncertain::{combine_linear, UncertainValue};
use crate::Result;

impl DriveParams {
    /// Drive parameters for a transition at intensity parameter
    /// h = Ω/Γ_j and detuning Δ = (Δ/Γ)·Γ_j; the laser sits at
    /// ω_res + Δ.
    pub fn for_transition(
        c: &PhysicalConstants,
        spec: &TransitionSpec,
        h: f64,
        delta_over_gamma: f64,
    ) -> Result<Self> {
        let gamma = spec.gamma.value;
        let delta = delta_over_gamma * gamma;
        DriveParams::new(h * gamma, delta, gamma, c.resonance_frequency() + delta)
    }
}

/// Complete per-transition correction budget and prediction.
#[derive(Debug, Clone, Serialize)]
pub struct CorrectionBreakdown {
    /// 2j of the upper level.
    pub j2: u32,
    pub drive: DriveParams,
    /// All channels, including the excluded relativistic one.
    pub channels: Vec<CorrectionChannel>,
    /// Δ_rad = L_bare + B·Ω² + Re(D)·Ω², in Hz.
    pub delta_rad: UncertainValue,
    /// Ω̂_rad = A_j − C_j − E_j − F − S (dimensionless).
    pub omega_hat_rad: UncertainValue,
    /// Ω_C = sqrt(Ω²(1+Ω̂_rad)² + (Δ−Δ_rad)²), in Hz.
    pub omega_c: UncertainValue,
    /// The same with C_j set to zero exactly.
    pub omega_no_c: UncertainValue,
    /// Uncorrected sqrt(Ω² + Δ²), in Hz.
    pub bare: Hz,
    /// Ω_C − bare, in Hz.
    pub headline: UncertainValue,
    /// Re(D)·ω_res and Im(D)·ω_res (dimensionless).
    pub d_re_times_omega: UncertainValue,
    pub d_im_times_omega: UncertainValue,
    /// One-photon ionization rate |Im D|·Ω², in Hz, and its ratio to Ω.
    pub ionization_rate: Hz,
    pub ionization_ratio: f64,
    /// Sideband broadening (Δ/Ω_R)|Im D|Ω², in Hz (informational).
    pub imaginary_width: Hz,
    /// True when the Green-function branch had to be conjugated.
    pub branch_conjugated: bool,
    /// Corrected mixing angle from tan2θ = −Ω(1+Ω̂_rad)/(Δ−Δ_rad).
    pub theta_corrected: f64,
}

impl CorrectionBreakdown {
    /// First-order total sideband shift:
    /// −(Δ/Ω_R)·Δ_rad + (Ω²/Ω_R)·Ω̂_rad. Agrees with `headline` to second
    /// order in the channel parameters.
    pub fn first_order_headline(&self) -> Hz {
        let d = &self.drive;
        -d.delta() / d.omega_r() * self.delta_rad.value
            + d.omega() * d.omega() / d.omega_r() * self.omega_hat_rad.value
    }
}

/// Evaluate every channel and aggregate the prediction for one transition.
pub fn aggregate(
    c: &PhysicalConstants,
    spec: &TransitionSpec,
    d: &DriveParams,
) -> Result<CorrectionBreakdown> {
    let rel = relativistic_detuning(c, spec.j2, d)?;
    let lamb = bare_lamb(spec, d);
    let bs = bloch_siegert(c, d);
    let orr = off_resonant(c, d)?;

    let rho_r = relativistic_dipole(c, spec.j2)?;
    let rho_f = field_configuration(c);
    let rho_c = c_term(c);
    let rho_a = tdm_radiative(c, spec.j2)?;
    let rho_s = secular_correction(d);

    let secular_valid = d.delta().abs() < d.omega();
    let ch_r = CorrectionChannel::rabi(ChannelId::RelativisticDipole, d, rho_r, true);
    let ch_f = CorrectionChannel::rabi(ChannelId::FieldConfiguration, d, rho_f, true);
    let ch_c = CorrectionChannel::rabi(ChannelId::CTerm, d, rho_c, true);
    let ch_a = CorrectionChannel::rabi(ChannelId::TransitionDipole, d, rho_a, true);
    let ch_s = CorrectionChannel::rabi(ChannelId::Secular, d, rho_s, secular_valid);

    // Δ_rad = L + B·Ω² + D_R·Ω²  (independent sources, quadrature)
    let delta_rad = combine_linear(&[
        (1.0, lamb.parameter),
        (1.0, bs.parameter),
        (1.0, orr.channel.parameter),
    ]);

    // Ω̂_rad = A_j − C_j − E_j − F − S; the ρ parameters already carry the
    // channel signs (ρ = −C_j etc.), so this is a plain sum.
    let omega_hat_rad = combine_linear(&[
        (1.0, rho_a),
        (1.0, rho_c),
        (1.0, rho_r),
        (1.0, rho_f),
        (1.0, rho_s),
    ]);
    // the same budget with the C-term removed exactly
    let omega_hat_no_c =
        combine_linear(&[(1.0, rho_a), (1.0, rho_r), (1.0, rho_f), (1.0, rho_s)]);

    let omega_c = corrected_rabi(d, omega_hat_rad, delta_rad);
    let omega_no_c = corrected_rabi(d, omega_hat_no_c, delta_rad);

    let bare = d.omega_r();
    let headline = UncertainValue::new(omega_c.value - bare, omega_c.sigma);

    let theta_corrected =
        mixing_angle(d.omega() * (1.0 + omega_hat_rad.value), d.delta() - delta_rad.value)
            .theta();

    let imaginary_width =
        corrections::imaginary_sideband_width(c, d, orr.d_im_times_omega.value);

    Ok(CorrectionBreakdown {
        j2: spec.j2,
        drive: *d,
        channels: vec![rel, lamb, bs, orr.channel, ch_r, ch_f, ch_c, ch_a, ch_s],
        delta_rad,
        omega_hat_rad,
        omega_c,
        omega_no_c,
        bare,
        headline,
        d_re_times_omega: orr.d_re_times_omega,
        d_im_times_omega: orr.d_im_times_omega,
        ionization_rate: orr.ionization_rate,
        ionization_ratio: orr.ionization_ratio,
        imaginary_width,
        branch_conjugated: orr.branch_conjugated,
        theta_corrected,
    })
}

/// Ω_C with first-order uncertainty propagation through
/// sqrt(Ω²(1+Ω̂)² + (Δ−Δ_rad)²):
/// ∂Ω_C/∂Ω̂ = Ω²(1+Ω̂)/Ω_C, ∂Ω_C/∂Δ_rad = −(Δ−Δ_rad)/Ω_C.
fn corrected_rabi(
    d: &DriveParams,
    omega_hat: UncertainValue,
    delta_rad: UncertainValue,
) -> UncertainValue {
    let om_corr = d.omega() * (1.0 + omega_hat.value);
    let de_corr = d.delta() - delta_rad.value;
    let omega_c = om_corr.hypot(de_corr);
    let d_dhat = d.omega() * om_corr / omega_c;
    let d_drad = -de_corr / omega_c;
    combine_linear(&[
        (d_dhat, UncertainValue::new(0.0, omega_hat.sigma)),
        (d_drad, UncertainValue::new(0.0, delta_rad.sigma)),
        (1.0, UncertainValue::exact(omega_c)),
    ])
}

/// The prediction with the C-term removed exactly (same pipeline, C := 0).
pub fn prediction_without_c(
    c: &PhysicalConstants,
    spec: &TransitionSpec,
    d: &DriveParams,
) -> Result<UncertainValue> {
    Ok(aggregate(c, spec, d)?.omega_no_c)
}

/// Ω_C − sqrt(Ω² + Δ²): the corrected sideband displacement relative to
/// the uncorrected generalized Rabi frequency.
pub fn headline_shift(
    c: &PhysicalConstants,
    spec: &TransitionSpec,
    d: &DriveParams,
) -> Result<UncertainValue> {
    Ok(aggregate(c, spec, d)?.headline)
}

/// One row of the shift table: a channel evaluated for both transitions.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TableRow {
    pub id: ChannelId,
    pub shift_half: UncertainValue,
    pub shift_three_half: UncertainValue,
}

/// The eight-channel summed-shift table (ω₊ band, both transitions).
#[derive(Debug, Clone, Serialize)]
pub struct ShiftTable {
    pub h: f64,
    pub delta_over_gamma: f64,
    pub rows: Vec<TableRow>,
}

/// Evaluate the eight aggregate channels for both transitions at intensity
/// h = Ω/Γ and detuning Δ = (Δ/Γ)·Γ.
pub fn table_one(
    c: &PhysicalConstants,
    half: &TransitionSpec,
    three_half: &TransitionSpec,
    h: f64,
    delta_over_gamma: f64,
) -> Result<ShiftTable> {
    let mut per_j = Vec::new();
    for spec in [half, three_half] {
        let d = DriveParams::for_transition(c, spec, h, delta_over_gamma)?;
        let b = aggregate(c, spec, &d)?;
        let shifts: Vec<(ChannelId, UncertainValue)> = b
            .channels
            .iter()
            .filter(|ch| ch.in_aggregate)
            .map(|ch| (ch.id, ch.shift_plus))
            .collect();
        per_j.push(shifts);
    }
    let rows = per_j[0]
        .iter()
        .zip(per_j[1].iter())
        .map(|(&(id, shift_half), &(_, shift_three_half))| TableRow {
            id,
            shift_half,
            shift_three_half,
        })
        .collect();
    Ok(ShiftTable { h, delta_over_gamma, rows })
}

/// Field-to-intensity coefficient: h_j per (V/m) of standing-wave field.
///
/// h = Ω/Γ_j with Ω the dipole coupling of the spin-resolved z element;
/// the adopted convention pairs the quoted Γ_j value with the ħ-scaled
/// coupling |q|·a_B·|d̂_j|·E/ħ, giving 346.783·10⁻⁶ (j = 1/2) and
/// 490.425·10⁻⁶ (j = 3/2) per V/m.
pub fn h_field_coefficient(c: &PhysicalConstants, spec: &TransitionSpec) -> Result<f64> {
    let lower = HydrogenLevel::ground(1)?;
    let upper = HydrogenLevel::excited_2p(spec.j2, 1)?;
    let dhat = dipole_z(&lower, &upper)?.abs();
    // |q|·a_B·d̂/(ħ·Γ) with a_B = c/(2π·Zα·m_freq) and ħ = h/2π
    Ok(c.q_abs * c.c_light * dhat / (c.zalpha() * c.m_freq * c.h_planck * spec.gamma.value))
}

/// h for a given standing-wave field strength in V/m.
pub fn h_from_field(c: &PhysicalConstants, spec: &TransitionSpec, e_sw: f64) -> Result<f64> {
    Ok(h_field_coefficient(c, spec)? * e_sw.abs())
}
