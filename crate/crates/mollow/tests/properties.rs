//! Property-based invariants and envelope checks.

use mollow::corrections::{summed_detuning_shift, summed_rabi_shift};
use mollow::dressed::{generalized_rabi, mixing_angle};
use mollow::hydrogen::EnergyParameter;
use mollow::spectrum::{secular_components, spectrum_exact, spectrum_secular, DriveParams};
use mollow::uncertain::{combine_linear, UncertainValue};
use mollow::PhysicalConstants;
use proptest::prelude::*;

proptest! {
    /// The exact spectrum is non-negative for any valid drive and frequency.
    #[test]
    fn spectrum_nonnegative(
        omega in 1e-3f64..1e3,
        delta in -1e3f64..1e3,
        gamma in 1e-6f64..1e2,
        x in -5.0f64..5.0,
    ) {
        let omega_l = 1e6;
        let d = DriveParams::new(omega, delta, gamma, omega_l).unwrap();
        let v = spectrum_exact(omega_l + x * d.omega_r(), &d);
        prop_assert!(v >= 0.0, "spectrum {v} negative");
        prop_assert!(v.is_finite());
    }

    /// Scaling every frequency by a power of two leaves the (degree-zero
    /// homogeneous) spectrum value bit-identical.
    #[test]
    fn spectrum_scale_invariance(
        omega in 1e-2f64..1e2,
        delta in -1e2f64..1e2,
        gamma in 1e-4f64..10.0,
        x in -3.0f64..3.0,
        k in -8i32..48,
    ) {
        let s = 2.0f64.powi(k);
        let d1 = DriveParams::new(omega, delta, gamma, 1024.0).unwrap();
        let d2 = DriveParams::new(s * omega, s * delta, s * gamma, s * 1024.0).unwrap();
        let v1 = spectrum_exact(1024.0 + x * omega, &d1);
        let v2 = spectrum_exact(s * (1024.0 + x * omega), &d2);
        prop_assert_eq!(v1, v2);
    }

    /// Parity of the exact spectrum about the laser frequency at Δ = 0,
    /// bit-exact when ω_L ± δ carries no rounding (dyadic offsets against
    /// a dyadic ω_L).
    #[test]
    fn spectrum_parity(
        omega in 1e-2f64..1e2,
        gamma in 1e-4f64..10.0,
        ticks in 1u32..u32::MAX,
    ) {
        let omega_l = 1024.0;
        let x = ticks as f64 / 2f64.powi(24); // exact in ω_L ± x
        let d = DriveParams::new(omega, 0.0, gamma, omega_l).unwrap();
        let hi = spectrum_exact(omega_l + x, &d);
        let lo = spectrum_exact(omega_l - x, &d);
        prop_assert_eq!(hi, lo);
    }

    /// Secular amplitudes are non-negative, symmetric, and A₊ = A₋.
    #[test]
    fn secular_component_invariants(
        omega in 1e-2f64..1e3,
        delta in -1e3f64..1e3,
        gamma in 1e-4f64..10.0,
    ) {
        let d = DriveParams::new(omega, delta, gamma, 1e6).unwrap();
        let sc = secular_components(&d);
        prop_assert!(sc.a0 >= 0.0 && sc.a_plus >= 0.0);
        prop_assert_eq!(sc.a_plus, sc.a_minus);
        prop_assert_eq!(sc.gamma_plus, sc.gamma_minus);
        prop_assert!(sc.gamma0 > 0.0 && sc.gamma_plus > 0.0);
    }

    /// combine_linear is exactly linear in each value and satisfies
    /// sigma(a·x) = |a|·sigma(x).
    #[test]
    fn combine_linear_properties(
        a in -100.0f64..100.0,
        v in -1e6f64..1e6,
        s in 0.0f64..1e3,
        v2 in -1e6f64..1e6,
        s2 in 0.0f64..1e3,
    ) {
        let x = UncertainValue::new(v, s);
        let scaled = combine_linear(&[(a, x)]);
        prop_assert_eq!(scaled.value, a * v);
        prop_assert_eq!(scaled.sigma, (a * s).abs());

        let y = UncertainValue::new(v2, s2);
        let sum = combine_linear(&[(1.0, x), (1.0, y)]);
        prop_assert_eq!(sum.value, v + v2);
        prop_assert!(sum.sigma <= s + s2 + 1e-12);
        prop_assert!(sum.sigma >= s.max(s2) - 1e-12);
    }

    /// The mixing-angle convention pair cos2θ = −Δ/Ω_R, sin2θ = Ω/Ω_R
    /// holds simultaneously, so the two printed forms of the off-resonant
    /// shift coincide.
    #[test]
    fn mixing_angle_pair(omega in 1e-3f64..1e3, delta in -1e3f64..1e3) {
        let angle = mixing_angle(omega, delta);
        let omega_r = generalized_rabi(omega, delta);
        prop_assert!((angle.cos_2theta() + delta / omega_r).abs() <= 1e-12);
        prop_assert!((angle.sin_2theta() - omega / omega_r).abs() <= 1e-12);
        prop_assert!(angle.theta() > 0.0 && angle.theta() < std::f64::consts::FRAC_PI_2);
        // orthonormality of the dressed coefficients
        let (c, s) = (angle.cos(), angle.sin());
        prop_assert!((c * c + s * s - 1.0).abs() <= 4.0 * f64::EPSILON);
    }

    /// Summed shifts are antisymmetric between the two sidebands by
    /// construction, and a detuning displacement 0 < p < Δ lowers ω₊.
    #[test]
    fn shift_sign_conventions(
        omega in 1.0f64..1e3,
        delta in 1e-3f64..1e3,
        frac in 1e-3f64..0.999,
    ) {
        let d = DriveParams::new(omega, delta, 1e-3 * omega, 1e6).unwrap();
        let p = frac * delta;
        prop_assert!(summed_detuning_shift(&d, p) < 0.0);
        // a pure Rabi rescaling with ρ > 0 raises ω₊
        prop_assert!(summed_rabi_shift(&d, 1e-3) > 0.0);
    }

    /// t(E) → ζ(t) round trip reproduces the input energy.
    #[test]
    fn energy_parameter_round_trip(e_scale in -3.0f64..3.0, n in 1u32..3) {
        prop_assume!(e_scale.abs() > 1e-3);
        let c = PhysicalConstants::default();
        let e = e_scale * c.bound_scale();
        let p = EnergyParameter::from_energy(&c, n, n - 1, e).unwrap();
        let back = p.zeta_of_t(&c);
        prop_assert!((back.re - e).abs() <= 1e-12 * e.abs());
        prop_assert!(back.im.abs() <= 1e-12 * e.abs());
    }
}

/// Secular-limit envelope: for Γ/Ω_R = 10⁻³ the worst absolute deviation
/// between exact and secular spectra stays below 10·(Γ/Ω_R)·max(exact).
#[test]
fn secular_limit_envelope() {
    for delta_frac in [0.0, 0.5] {
        let omega = 1.0e9;
        let delta = delta_frac * omega;
        let omega_r = generalized_rabi(omega, delta);
        let gamma = 1e-3 * omega_r;
        let d = DriveParams::new(omega, delta, gamma, 3e15).unwrap();

        let mut max_diff: f64 = 0.0;
        let mut max_exact: f64 = 0.0;
        let n = 4001;
        for i in 0..n {
            let x = -2.0 + 4.0 * i as f64 / (n - 1) as f64;
            let w = d.omega_laser() + x * omega_r;
            let e = spectrum_exact(w, &d);
            let s = spectrum_secular(w, &d);
            max_diff = max_diff.max((e - s).abs());
            max_exact = max_exact.max(e);
        }
        let c = max_diff / (1e-3 * max_exact);
        assert!(c <= 10.0, "envelope constant {c} exceeds 10 at Δ/Ω = {delta_frac}");
    }
}
