//! Real values with one-sigma uncertainties and first-order propagation.
//!
//! Sources are modelled as independent and Gaussian, so linear combinations
//! add in quadrature. Nothing more general is provided (no correlations, no
//! Monte-Carlo propagation); that is all the numerical pipeline needs.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A real number together with its one-sigma uncertainty.
///
/// `sigma` is kept non-negative; combining exact values (`sigma == 0`)
/// yields an exact value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertainValue {
    pub value: f64,
    pub sigma: f64,
}

impl UncertainValue {
    pub fn new(value: f64, sigma: f64) -> Self {
        Self { value, sigma: sigma.abs() }
    }

    /// A value with zero uncertainty.
    pub fn exact(value: f64) -> Self {
        Self { value, sigma: 0.0 }
    }

    /// Multiply by an exact scalar: sigma(a·x) = |a|·sigma(x).
    pub fn scaled(self, a: f64) -> Self {
        Self { value: a * self.value, sigma: a.abs() * self.sigma }
    }

    /// Map the central value through `f` with exact derivative `dfdx`,
    /// propagating sigma to first order.
    pub fn map(self, f: impl Fn(f64) -> f64, dfdx: f64) -> Self {
        Self { value: f(self.value), sigma: dfdx.abs() * self.sigma }
    }

    /// True when `other` lies within `n_sigma` combined standard deviations.
    pub fn consistent_with(&self, other: &Self, n_sigma: f64) -> bool {
        let d = (self.value - other.value).abs();
        d <= n_sigma * (self.sigma.powi(2) + other.sigma.powi(2)).sqrt()
    }
}

/// Linear combination Σ cᵢ·xᵢ of independent uncertain values.
///
/// The central value is the exact linear combination; the uncertainty is
/// the quadrature sum sqrt(Σ (cᵢ·σᵢ)²).
pub fn combine_linear(terms: &[(f64, UncertainValue)]) -> UncertainValue {
    let value = terms.iter().map(|(c, x)| c * x.value).sum();
    let var: f64 = terms.iter().map(|(c, x)| (c * x.sigma).powi(2)).sum();
    UncertainValue { value, sigma: var.sqrt() }
}

impl Add for UncertainValue {
    type Output = UncertainValue;
    fn add(self, rhs: UncertainValue) -> UncertainValue {
        combine_linear(&[(1.0, self), (1.0, rhs)])
    }
}

impl Sub for UncertainValue {
    type Output = UncertainValue;
    fn sub(self, rhs: UncertainValue) -> UncertainValue {
        combine_linear(&[(1.0, self), (-1.0, rhs)])
    }
}

impl Neg for UncertainValue {
    type Output = UncertainValue;
    fn neg(self) -> UncertainValue {
        UncertainValue { value: -self.value, sigma: self.sigma }
    }
}

impl Mul<f64> for UncertainValue {
    type Output = UncertainValue;
    fn mul(self, a: f64) -> UncertainValue {
        self.scaled(a)
    }
}

impl fmt::Display for UncertainValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.value, self.sigma)
    }
}
