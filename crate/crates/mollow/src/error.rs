use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Drive parameters violate their invariants (Ω > 0, Γ > 0, ω_L > 0).
    #[error("invalid drive parameters: {0}")]
    InvalidDrive(String),

    /// Quantum numbers do not describe a valid hydrogen level.
    #[error("invalid quantum numbers: {0}")]
    InvalidLevel(String),

    /// A dipole matrix element was requested for a level pair the library
    /// does not carry.
    #[error("unsupported level pair for dipole element: {0}")]
    UnsupportedLevelPair(String),

    /// Φ(n, t) was evaluated at a bound-state pole (n·t a positive integer).
    #[error("bound-state pole of Phi(n, t): n*t = {nt} is the integer {k}")]
    PhiPole { nt: f64, k: u32 },

    /// Φ(n, t) is outside the domain covered by the implemented series.
    #[error("no convergence: Phi series argument |z| = {z_abs} outside the implemented domain")]
    NoConvergence { z_abs: f64 },

    /// The Laguerre-sum oracle hit its term cap before the tail estimate
    /// dropped below the requested tolerance.
    #[error("oracle not converged: tail estimate {tail:e} after {terms} terms")]
    NotConverged { tail: f64, terms: usize },

    /// The energy parameterization t(E) is undefined at E = 0.
    #[error("t(E) undefined for E = 0")]
    ZeroEnergy,

    /// Three spectral maxima could not be bracketed.
    #[error("peaks unresolved: {0}")]
    PeaksUnresolved(String),

    /// The sideband-position series is not trusted for Γ/Ω_R ≥ 1.
    #[error("series out of range: Gamma/Omega_R = {0} >= 1")]
    SeriesOutOfRange(f64),

    /// The Green-function branch validation failed on both branches.
    #[error("branch validation failed: Im(D) = {0} not negative on either branch")]
    BranchValidation(f64),

    /// Configuration file problem (unknown key, malformed line, bad value).
    #[error("config error: {0}")]
    Config(String),

    /// Invalid command-line usage detected after parsing.
    #[error("invalid run configuration: {0}")]
    InvalidRunConfig(String),

    /// I/O failure while writing output artifacts.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
