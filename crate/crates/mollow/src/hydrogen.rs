//! Hydrogen bound-state data: Dirac energies, spin-resolved dipole matrix
//! elements for the 1S–2P doublet, decay rates, adopted Lamb-shift inputs,
//! and the complex t-parameterization of bound-state energies.
//!
//! Dipole lengths are returned in units of the Bohr radius a_B = 1/(Zα m).
//! Half-integer angular momenta are carried doubled (`j2 = 2j`, `m2 = 2m`).

use num_complex::Complex64;

use crate::constants::{Hz, PhysicalConstants};
use crate::uncertain::{combine_linear, UncertainValue};
use crate::{Error, Result};

/// A hydrogen level |n l_j, m⟩ with doubled half-integer quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HydrogenLevel {
    pub n: u32,
    pub l: u32,
    pub j2: u32,
    pub m2: i32,
}

impl HydrogenLevel {
    pub fn new(n: u32, l: u32, j2: u32, m2: i32) -> Result<Self> {
        if n < 1 || l >= n {
            return Err(Error::InvalidLevel(format!("l = {l} must satisfy l < n = {n}")));
        }
        let ok_j = j2 == 2 * l + 1 || (l > 0 && j2 + 1 == 2 * l);
        if !ok_j {
            return Err(Error::InvalidLevel(format!("j = {j2}/2 incompatible with l = {l}")));
        }
        if m2.unsigned_abs() > j2 || (m2 - j2 as i32) % 2 != 0 {
            return Err(Error::InvalidLevel(format!("m = {m2}/2 incompatible with j = {j2}/2")));
        }
        Ok(Self { n, l, j2, m2 })
    }

    /// |1S_{1/2}, m⟩.
    pub fn ground(m2: i32) -> Result<Self> {
        Self::new(1, 0, 1, m2)
    }

    /// |2P_j, m⟩ with 2j ∈ {1, 3}.
    pub fn excited_2p(j2: u32, m2: i32) -> Result<Self> {
        Self::new(2, 1, j2, m2)
    }
}

/// Dirac energy of the level (n, j) through order (Zα)⁴, as a frequency:
/// E = m − (Zα)²m/(2n²) − ((Zα)⁴m/n³)·[1/(2j+1) − 3/(8n)].
pub fn dirac_energy(c: &PhysicalConstants, n: u32, j2: u32) -> Result<Hz> {
    let nf = n as f64;
    Ok(c.m_freq - c.zalpha2() * c.m_freq / (2.0 * nf * nf) + dirac_fine_structure(c, n, j2)?)
}

/// The (Zα)⁴ fine-structure part of the Dirac energy alone,
/// −((Zα)⁴m/n³)·[1/(2j+1) − 3/(8n)], free of the cancellation against the
/// rest energy that plagues differences of full Dirac energies.
pub fn dirac_fine_structure(c: &PhysicalConstants, n: u32, j2: u32) -> Result<Hz> {
    if n < 1 || j2.is_multiple_of(2) || j2 > 2 * n - 1 {
        return Err(Error::InvalidLevel(format!("(n, 2j) = ({n}, {j2})")));
    }
    let nf = n as f64;
    Ok(-c.zalpha4() * c.m_freq / nf.powi(3) * (1.0 / (j2 as f64 + 1.0) - 3.0 / (8.0 * nf)))
}

/// Spin-resolved ⟨1S_{1/2}, m_f | z | 2P_j, m_i⟩ in units of a_B.
///
/// A z-polarized field couples only Δm = 0 and only |m| = 1/2 upper levels;
/// all other combinations vanish identically. The nonzero values are
/// −(2⁷/3⁵)·sqrt(2/3) for j = 1/2 and +(2⁸/3⁵)·sqrt(1/3) for j = 3/2,
/// a ratio of −√2.
pub fn dipole_z(lower: &HydrogenLevel, upper: &HydrogenLevel) -> Result<f64> {
    check_1s2p_pair(lower, upper)?;
    if lower.m2 != upper.m2 || upper.m2.unsigned_abs() != 1 {
        return Ok(0.0);
    }
    let r = 128.0 / 243.0; // 2^7/3^5
    Ok(match upper.j2 {
        1 => -r * (2.0f64 / 3.0).sqrt(),
        3 => 2.0 * r * (1.0f64 / 3.0).sqrt(),
        _ => unreachable!(),
    })
}

/// Spin-resolved x- or y-component matrix elements vanish for Δm = 0;
/// their squared magnitudes for Δm = ±1 are carried by
/// [`dipole_strength_fraction`].
pub fn dipole_xy_same_m(_lower: &HydrogenLevel, _upper: &HydrogenLevel) -> f64 {
    0.0
}

/// Spinless ⟨1S | z | 2P, m=0⟩ = (2⁷/3⁵)·√2 in units of a_B.
pub fn dipole_spinless_z() -> f64 {
    128.0 / 243.0 * 2.0f64.sqrt()
}

/// |⟨1S|z|2P⟩|² = 2¹⁵/3¹⁰ in units of a_B², the squared spinless dipole.
pub fn dipole_spinless_z_squared() -> f64 {
    32768.0 / 59049.0
}

/// Σᵢ |⟨1S_{1/2}, m_f | xⁱ | 2P_j, m_i⟩|² as an exact fraction of the
/// spinless strength 2¹⁵/3¹⁰ a_B². Returns (numerator, denominator).
///
/// For the 2P_{1/2} upper state the channel with m_f = −m_i is twice as
/// strong as m_f = m_i; for 2P_{3/2} (|m| = 1/2) the ratio is reversed.
pub fn dipole_strength_fraction(upper: &HydrogenLevel, m_f2: i32) -> Result<(u32, u32)> {
    let lower = HydrogenLevel::ground(m_f2)?;
    check_1s2p_pair(&lower, upper)?;
    let same = m_f2 == upper.m2;
    Ok(match (upper.j2, upper.m2.unsigned_abs(), same) {
        (1, 1, true) => (1, 3),
        (1, 1, false) => (2, 3),
        (3, 1, true) => (2, 3),
        (3, 1, false) => (1, 3),
        // |m| = 3/2 couples to the single final state with the same spin
        // projection, through x and y only.
        (3, 3, _) => {
            if m_f2.signum() == upper.m2.signum() {
                (1, 1)
            } else {
                (0, 1)
            }
        }
        _ => unreachable!(),
    })
}

/// Σᵢ |⟨1S_{1/2}, m_f | xⁱ | 2P_j, m_i⟩|² in a_B² (floating-point).
pub fn dipole_sum_squared(upper: &HydrogenLevel, m_f2: i32) -> Result<f64> {
    let (num, den) = dipole_strength_fraction(upper, m_f2)?;
    Ok(num as f64 / den as f64 * dipole_spinless_z_squared())
}

fn check_1s2p_pair(lower: &HydrogenLevel, upper: &HydrogenLevel) -> Result<()> {
    if lower.n == 1 && lower.l == 0 && upper.n == 2 && upper.l == 1 {
        Ok(())
    } else {
        Err(Error::UnsupportedLevelPair(format!(
            "({}{}_{}/2 -> {}{}_{}/2); only 1S-2P is carried",
            lower.n, lower.l, lower.j2, upper.n, upper.l, upper.j2
        )))
    }
}

/// Lowest-order 2P decay rate Γ = (4/3)·α·E³·d² = (2⁸/3⁸)·α(Zα)⁴·m, in Hz.
///
/// Serves as a ~0.1%-level cross-check of the adopted widths, which
/// include reduced-mass and radiative effects.
pub fn decay_rate_lowest_order(c: &PhysicalConstants) -> Hz {
    256.0 / 6561.0 * c.alpha * c.zalpha4() * c.m_freq
}

/// t_{nl}(E) = sqrt(E_n / E) with E_n = −(Zα)²m/(2n²), on the principal
/// branch of the square root (non-negative real part; positive imaginary
/// part for negative real radicands).
///
/// The branch is validated globally where it matters physically: the
/// off-resonant coefficient must acquire a negative imaginary part, see
/// [`crate::green::off_resonant_d`].
pub fn t_of_energy(c: &PhysicalConstants, n: u32, e: Hz) -> Result<Complex64> {
    if e == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let e_n = -c.bound_scale() / (2.0 * (n as f64).powi(2));
    Ok(Complex64::new(e_n / e, 0.0).sqrt())
}

/// The complex (ζ, t) energy pair for a reference state (n, l):
/// ζ(t) = −(Zα)²m/(2 n² t²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParameter {
    pub zeta: Complex64,
    pub t: Complex64,
    pub n_ref: u32,
    pub l_ref: u32,
}

impl EnergyParameter {
    pub fn from_energy(c: &PhysicalConstants, n: u32, l: u32, e: Hz) -> Result<Self> {
        let t = t_of_energy(c, n, e)?;
        Ok(Self { zeta: Complex64::new(e, 0.0), t, n_ref: n, l_ref: l })
    }

    pub fn from_t(c: &PhysicalConstants, n: u32, l: u32, t: Complex64) -> Self {
        let zeta = -c.bound_scale() / (2.0 * (n as f64).powi(2) * t * t);
        Self { zeta, t, n_ref: n, l_ref: l }
    }

    /// ζ rebuilt from t; equals `zeta` to machine precision by construction.
    pub fn zeta_of_t(&self, c: &PhysicalConstants) -> Complex64 {
        -c.bound_scale() / (2.0 * (self.n_ref as f64).powi(2) * self.t * self.t)
    }
}

/// Adopted data for one fine-structure transition 1S_{1/2} ↔ 2P_j.
///
/// The decay widths and Lamb shifts are measured/compiled inputs, not
/// derivations; [`decay_rate_lowest_order`] provides the analytic
/// cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSpec {
    /// 2j of the upper level (1 or 3).
    pub j2: u32,
    /// Adopted decay width Γ_j in Hz.
    pub gamma: UncertainValue,
    /// Lamb shift of the 1S_{1/2} level in Hz.
    pub lamb_1s: UncertainValue,
    /// Lamb shift of the 2P_j level in Hz.
    pub lamb_2p: UncertainValue,
}

impl TransitionSpec {
    /// 1S_{1/2} ↔ 2P_{1/2} defaults.
    ///
    /// The width carries more digits than are usually displayed; the
    /// 7-digit rounding 99.70942(1) MHz is the conventionally quoted value.
    pub fn default_half() -> Self {
        Self {
            j2: 1,
            gamma: UncertainValue::new(99.709_416_0e6, 10.0),
            lamb_1s: UncertainValue::new(8_172_811.0e3, 32.0e3),
            lamb_2p: UncertainValue::new(-12_835.99e3, 0.08e3),
        }
    }

    /// 1S_{1/2} ↔ 2P_{3/2} defaults. The adopted width coincides with the
    /// 2P_{1/2} one; it is stored as an independent entry.
    pub fn default_three_half() -> Self {
        Self {
            j2: 3,
            gamma: UncertainValue::new(99.709_416_0e6, 10.0),
            lamb_1s: UncertainValue::new(8_172_811.0e3, 32.0e3),
            lamb_2p: UncertainValue::new(12_517.46e3, 0.08e3),
        }
    }

    /// Bare Lamb shift of the transition, L_bare = L_2P_j − L_1S.
    pub fn l_bare(&self) -> UncertainValue {
        combine_linear(&[(1.0, self.lamb_2p), (-1.0, self.lamb_1s)])
    }

    /// Human-readable j label ("1/2" or "3/2").
    pub fn label(&self) -> &'static str {
        if self.j2 == 1 {
            "1/2"
        } else {
            "3/2"
        }
    }
}
