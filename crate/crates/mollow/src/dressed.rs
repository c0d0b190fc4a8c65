//! Dressed-state algebra: mixing angle, generalized Rabi frequency,
//! quasi-energies, and the quantum–classical field matching.
//!
//! The sign convention is fixed by the pair
//! cos 2θ = −Δ/Ω_R, sin 2θ = Ω/Ω_R with θ ∈ (0, π/2); the defining
//! relation tan 2θ = −Ω/Δ alone is ambiguous by π/2, and the off-resonant
//! correction formulas require exactly this pairing.

use crate::constants::Hz;

/// Generalized Rabi frequency Ω_R = sqrt(Ω² + Δ²).
pub fn generalized_rabi(omega: Hz, delta: Hz) -> Hz {
    omega.hypot(delta)
}

/// Dressed-state mixing angle θ ∈ (0, π/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAngle {
    theta: f64,
}

impl MixingAngle {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cos_2theta(&self) -> f64 {
        (2.0 * self.theta).cos()
    }

    pub fn sin_2theta(&self) -> f64 {
        (2.0 * self.theta).sin()
    }

    /// Dressed coefficient cos θ of |e, n⟩ in the + branch.
    pub fn cos(&self) -> f64 {
        self.theta.cos()
    }

    /// Dressed coefficient sin θ of |g, n+1⟩ in the + branch.
    pub fn sin(&self) -> f64 {
        self.theta.sin()
    }
}

/// The unique θ ∈ (0, π/2) with cos 2θ = −Δ/Ω_R and sin 2θ = Ω/Ω_R.
///
/// Requires Ω > 0 (sin 2θ > 0 selects the branch).
pub fn mixing_angle(omega: Hz, delta: Hz) -> MixingAngle {
    debug_assert!(omega > 0.0);
    let omega_r = generalized_rabi(omega, delta);
    let theta = 0.5 * (omega / omega_r).atan2(-delta / omega_r);
    MixingAngle { theta }
}

/// Branch label of a dressed level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// One dressed level |(±, n)⟩ with its quasi-energy and the coefficients
/// (c_e, c_g) on |e, n⟩ and |g, n+1⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedLevel {
    pub branch: Branch,
    pub n_photons: u64,
    pub energy: Hz,
    pub c_e: f64,
    pub c_g: f64,
}

impl DressedLevel {
    pub fn new(branch: Branch, n: u64, omega_l: Hz, omega_eg: Hz, omega: Hz, delta: Hz) -> Self {
        let angle = mixing_angle(omega, delta);
        let (e_plus, e_minus) = quasi_energies(n, omega_l, omega_eg, omega, delta);
        let (energy, c_e, c_g) = match branch {
            Branch::Plus => (e_plus, angle.cos(), angle.sin()),
            Branch::Minus => (e_minus, -angle.sin(), angle.cos()),
        };
        Self { branch, n_photons: n, energy, c_e, c_g }
    }
}

/// Quasi-energies E_{±,n} = (n + 1/2)·ω_L + ω_eg/2 ± Ω_R/2.
///
/// The splitting E₊ − E₋ = Ω_R is the AC-Stark shift.
pub fn quasi_energies(n: u64, omega_l: Hz, omega_eg: Hz, omega: Hz, delta: Hz) -> (Hz, Hz) {
    let base = (n as f64 + 0.5) * omega_l + 0.5 * omega_eg;
    let half_split = 0.5 * generalized_rabi(omega, delta);
    (base + half_split, base - half_split)
}

/// Classical field amplitude matched to the per-photon field:
/// E_L = 2·sqrt(n+1)·E_L^(γ).
pub fn match_classical(n: u64, e_per_photon: f64) -> f64 {
    2.0 * ((n + 1) as f64).sqrt() * e_per_photon
}

/// Inverse of [`match_classical`].
pub fn photon_field_from_classical(n: u64, e_classical: f64) -> f64 {
    e_classical / (2.0 * ((n + 1) as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn generalized_rabi_examples() {
        assert_relative_eq!(generalized_rabi(3.0, 4.0), 5.0);
        assert_relative_eq!(generalized_rabi(7.5, 0.0), 7.5);
        assert_relative_eq!(generalized_rabi(7.5, -4.0), generalized_rabi(7.5, 4.0));
    }

    #[test]
    fn mixing_angle_convention() {
        // Δ = 0 → θ = π/4.
        let a = mixing_angle(1.0, 0.0);
        assert_relative_eq!(a.theta(), std::f64::consts::FRAC_PI_4, max_relative = 1e-15);

        // Δ → +∞ at fixed Ω → cos 2θ → −1 → θ → π/2.
        let a = mixing_angle(1.0, 1e12);
        assert!(a.theta() > 0.499_999 * std::f64::consts::PI);

        // Ω = Δ = 1: cos 2θ = −1/√2 → θ = 3π/8.
        let a = mixing_angle(1.0, 1.0);
        assert_relative_eq!(a.theta(), 3.0 * std::f64::consts::FRAC_PI_8, max_relative = 1e-14);
        assert_relative_eq!(a.cos_2theta(), -1.0 / 2f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn branch_pair_consistency() {
        // cos 2θ from the angle must equal −Δ/Ω_R for either sign of Δ, so
        // ±cos(2θ)·Ω² and ∓(Δ/Ω_R)·Ω² are the same expression.
        for &(omega, delta) in &[(1.0, 0.3), (2.0, -5.0), (10.0, 0.0), (0.5, 4.0)] {
            let a = mixing_angle(omega, delta);
            let omega_r = generalized_rabi(omega, delta);
            assert_relative_eq!(a.cos_2theta(), -delta / omega_r, epsilon = 1e-14);
            assert_relative_eq!(a.sin_2theta(), omega / omega_r, epsilon = 1e-14);
        }
    }

    #[test]
    fn dressed_coefficients_are_orthonormal() {
        for &(omega, delta) in &[(1.0, 0.0), (3.0, -1.0), (0.25, 8.0)] {
            let plus = DressedLevel::new(Branch::Plus, 5, 10.0, 10.0 - delta, omega, delta);
            let minus = DressedLevel::new(Branch::Minus, 5, 10.0, 10.0 - delta, omega, delta);
            assert_relative_eq!(plus.c_e.powi(2) + plus.c_g.powi(2), 1.0, epsilon = 1e-15);
            assert_relative_eq!(minus.c_e.powi(2) + minus.c_g.powi(2), 1.0, epsilon = 1e-15);
            assert_relative_eq!(plus.c_e * minus.c_e + plus.c_g * minus.c_g, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn quasi_energy_splitting_is_omega_r() {
        let (ep, em) = quasi_energies(3, 11.0, 10.0, 2.0, 1.0);
        assert_relative_eq!(ep - em, generalized_rabi(2.0, 1.0), max_relative = 1e-13);
    }

    #[test]
    fn quasi_energy_literal_formula_on_resonance() {
        // n = 0, ω_L = ω_eg (Δ = 0): E_± = ω_eg ± Ω/2 straight from the
        // defining expression.
        let omega_eg = 10.0;
        let omega = 0.5;
        let (ep, em) = quasi_energies(0, omega_eg, omega_eg, omega, 0.0);
        assert_relative_eq!(ep, omega_eg + 0.25, max_relative = 1e-15);
        assert_relative_eq!(em, omega_eg - 0.25, max_relative = 1e-15);
    }

    #[test]
    fn transition_frequencies_between_dressed_manifolds() {
        // (±, n) → (±, n−1) differ by ω_L; (+, n) → (−, n−1) by ω_L + Ω_R.
        let (omega_l, omega_eg, omega, delta) = (10.5, 10.0, 2.0, 0.5);
        let omega_r = generalized_rabi(omega, delta);
        let (ep_n, em_n) = quasi_energies(4, omega_l, omega_eg, omega, delta);
        let (ep_m, em_m) = quasi_energies(3, omega_l, omega_eg, omega, delta);
        assert_relative_eq!(ep_n - ep_m, omega_l, max_relative = 1e-15);
        assert_relative_eq!(em_n - em_m, omega_l, max_relative = 1e-15);
        assert_relative_eq!(ep_n - em_m, omega_l + omega_r, max_relative = 1e-15);
        assert_relative_eq!(em_n - ep_m, omega_l - omega_r, max_relative = 1e-15);
    }

    #[test]
    fn classical_matching_round_trip() {
        assert_relative_eq!(match_classical(0, 1.25), 2.5);
        assert_relative_eq!(match_classical(99, 0.1), 2.0);
        let e = 123.456;
        assert_relative_eq!(match_classical(7, photon_field_from_classical(7, e)), e);
    }
}
