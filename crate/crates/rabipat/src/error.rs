//! Error type shared across the crate.

use std::fmt;

/// Errors produced by operator construction, diagonalization, and the
/// analytic phase formulas.
#[derive(Debug, Clone, PartialEq)]
pub enum RabiError {
    /// Invalid physical or numerical configuration.
    InvalidConfig(String),
    /// Operator/state dimensions do not match.
    DimensionMismatch { left: usize, right: usize },
    /// A Hermitian matrix was required but the input is not Hermitian.
    NonHermitian { max_asymmetry: f64 },
    /// A normalized state was required.
    NotNormalized { norm: f64 },
    /// An analytic branch was evaluated outside its regime of validity.
    Regime {
        coupling: f64,
        expected: &'static str,
    },
}

impl fmt::Display for RabiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RabiError::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            RabiError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            RabiError::NonHermitian { max_asymmetry } => {
                write!(f, "matrix is not Hermitian (max |H - H^dag| = {max_asymmetry:e})")
            }
            RabiError::NotNormalized { norm } => {
                write!(f, "state is not normalized (norm = {norm})")
            }
            RabiError::Regime { coupling, expected } => {
                write!(f, "coupling {coupling} outside the {expected} regime")
            }
        }
    }
}

impl std::error::Error for RabiError {}

pub type Result<T> = std::result::Result<T, RabiError>;
