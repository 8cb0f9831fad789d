use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma (or a quantity built on it) evaluated at a pole.
    Pole { z: f64 },
    /// A parameter violates its documented precondition.
    InvalidParameter { name: &'static str, value: f64 },
    /// Series or asymptotic expansion could not reach the requested accuracy.
    AccuracyUnreachable { terms: usize },
    /// The operation needs |j| < 1/2 (or 0 < |j| < 1/2) and got `j`.
    Sector { j: f64 },
    /// 2mE/ħ² + (2mΩ/ħ)(j + s/2) is not negative: no bound state.
    NotBound { bracket: f64 },
    /// Argument outside the domain where an approximation is valid.
    Domain { what: &'static str, value: f64 },
    /// An iterative procedure did not settle.
    Convergence { what: &'static str, value: f64 },
    /// Sampled profile too coarse to resolve a sign change.
    Resolution { r: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { z } => write!(f, "gamma pole at z = {z}"),
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::AccuracyUnreachable { terms } => {
                write!(f, "requested accuracy not reached within {terms} terms")
            }
            Error::Sector { j } => write!(
                f,
                "|j| = {} is outside the singular sector |j| < 1/2",
                j.abs()
            ),
            Error::NotBound { bracket } => write!(
                f,
                "no bound state: 2mE/hbar^2 + (2m Omega/hbar)(j + s/2) = {bracket} is not negative"
            ),
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::Convergence { what, value } => {
                write!(f, "{what} did not converge (last value {value})")
            }
            Error::Resolution { r } => {
                write!(f, "profile does not resolve the sign change near r = {r}")
            }
        }
    }
}

impl core::error::Error for Error {}
