//! Physical constants and the unit conventions used across the crate.
//!
//! Every energy-like quantity is stored as an ordinary frequency in hertz,
//! i.e. E/h. All analytic expressions are degree-1 homogeneous in energy,
//! so this single convention is consistent throughout; the electron mass
//! enters only as its frequency equivalent m c²/h ≈ 1.23559·10²⁰ Hz.
//!
//! The electron charge convention is q = −|q|; only |q| appears in
//! numerical results.

/// Ordinary frequency in hertz (cycles per second).
pub type Hz = f64;

/// Sign of the electron charge, q = −|q|.
pub const ELECTRON_CHARGE_SIGN: f64 = -1.0;

/// Fundamental constants, immutable after construction.
///
/// Defaults are the 2018 CODATA adjustment together with the exact SI
/// values of e, h and c. Individual entries can be overridden through the
/// key=value configuration file (see [`crate::config`]).
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalConstants {
    /// Fine-structure constant α (dimensionless).
    pub alpha: f64,
    /// Nuclear charge number Z (1 for hydrogen).
    pub z: u32,
    /// Electron mass as a frequency, m c²/h, in Hz.
    pub m_freq: Hz,
    /// Magnitude of the electron charge |q| in coulomb.
    pub q_abs: f64,
    /// Planck constant in J·s.
    pub h_planck: f64,
    /// Speed of light in m/s.
    pub c_light: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            alpha: 7.297_352_569_3e-3,
            z: 1,
            // m_e c^2 / h = 8.1871057769e-14 J / 6.62607015e-34 J s
            m_freq: 1.235_589_963_818_901e20,
            q_abs: 1.602_176_634e-19,
            h_planck: 6.626_070_15e-34,
            c_light: 299_792_458.0,
        }
    }
}

impl PhysicalConstants {
    /// Zα.
    pub fn zalpha(&self) -> f64 {
        self.z as f64 * self.alpha
    }

    /// (Zα)².
    pub fn zalpha2(&self) -> f64 {
        self.zalpha() * self.zalpha()
    }

    /// (Zα)⁴.
    pub fn zalpha4(&self) -> f64 {
        self.zalpha2() * self.zalpha2()
    }

    /// The natural energy scale (Zα)²·m of the bound-state problem, in Hz.
    pub fn bound_scale(&self) -> Hz {
        self.zalpha2() * self.m_freq
    }

    /// Schrödinger 1S–2P resonance frequency, (3/8)(Zα)² m, in Hz.
    pub fn resonance_frequency(&self) -> Hz {
        0.375 * self.bound_scale()
    }

    /// Bohr radius a_B = 1/(Zα m) expressed in seconds (with m in Hz).
    pub fn bohr_time(&self) -> f64 {
        1.0 / (self.zalpha() * self.m_freq)
    }

    /// Bohr radius in meters, a_B = ħ/(m c Zα) = c/(2π·m_freq·Zα).
    pub fn bohr_radius_m(&self) -> f64 {
        self.c_light / (2.0 * std::f64::consts::PI * self.m_freq * self.zalpha())
    }

    /// Conversion factor from the internal matrix-element unit m·a_B⁴
    /// to s·m² (i.e. Hz⁻¹·length²): m·a_B² = 1/((Zα)²m) carries the
    /// inverse-frequency part and the remaining a_B² is expressed in
    /// meters.
    pub fn m_abohr4_to_s_m2(&self) -> f64 {
        let a_b = self.bohr_radius_m();
        a_b * a_b / self.bound_scale()
    }

    /// ln[(Zα)⁻²], the leading bound-state logarithm.
    pub fn log_zalpha(&self) -> f64 {
        -self.zalpha2().ln()
    }
}
