//! Resonance-fluorescence spectroscopy of strongly driven hydrogen.
//!
//! This crate evaluates the incoherent fluorescence (Mollow) spectrum of a
//! laser-driven two-level transition and, for the hydrogen 1S–2P doublet,
//! every relativistic and radiative correction that shifts the sideband
//! positions at the kHz level: the bare Lamb shift, Bloch–Siegert shifts,
//! off-resonant stimulated corrections mediated by the Schrödinger–Coulomb
//! Green function, relativistic and radiative corrections to the transition
//! dipole moment, field-configuration corrections for a standing-wave drive,
//! and corrections to the secular approximation.
//!
//! All energies are handled as ordinary frequencies in hertz (E/h). Inputs
//! with quoted error bars are carried as [`UncertainValue`]s with first-order
//! propagation of independent Gaussian uncertainties.
//!
//! The crate is organised along the physics:
//!
//! * [`constants`] – physical constants, unit conventions, configuration;
//! * [`uncertain`] – one-sigma uncertainty arithmetic;
//! * [`spectrum`] – exact and secular Mollow spectra, peak finding;
//! * [`dressed`] – dressed-state algebra (mixing angle, quasi-energies);
//! * [`hydrogen`] – bound-state data: Dirac energies, dipole matrix
//!   elements, decay rates, Lamb-shift inputs, the t-parameterization;
//! * [`green`] – Coulomb Green-function matrix elements and the
//!   Laguerre-sum oracle used to validate them;
//! * [`corrections`] – the individual correction channels;
//! * [`prediction`] – aggregation into corrected sideband predictions;
//! * [`cli`] – the command-line front end.

pub mod cli;
pub mod config;
pub mod constants;
pub mod corrections;
pub mod dressed;
pub mod green;
pub mod hydrogen;
pub mod output;
pub mod prediction;
pub mod spectrum;
pub mod uncertain;

mod error;

pub use constants::{Hz, PhysicalConstants};
pub use error::Error;
pub use hydrogen::TransitionSpec;
pub use spectrum::DriveParams;
pub use uncertain::{combine_linear, UncertainValue};

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
