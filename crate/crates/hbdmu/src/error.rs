use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation requested outside the open unit disk.
    Domain(String),
    /// A constructor invariant was violated (grids, measures, descriptors).
    Invalid(String),
    /// A rational denominator vanishes inside the open disk.
    PoleInDisk { modulus: f64 },
    /// The log-modulus profile is not integrable: `b` is extreme at grid
    /// resolution and has no Pythagorean mate.
    Extreme(String),
    /// `sup |b| > 1` beyond tolerance on the boundary grid.
    NotContractive { sup: f64 },
    /// The trigonometric polynomial dips below `-1e-10` on the check grid.
    Negative { min: f64 },
    /// Root pairing in the Fejer-Riesz factorization failed at tolerance.
    Pairing(String),
    /// The companion-matrix QR iteration did not converge.
    RootFinding(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
            Error::PoleInDisk { modulus } => {
                write!(f, "rational denominator has a zero of modulus {modulus} inside the open unit disk")
            }
            Error::Extreme(m) => write!(f, "extreme function: {m}"),
            Error::NotContractive { sup } => {
                write!(f, "boundary modulus exceeds 1: sup |b| = {sup}")
            }
            Error::Negative { min } => {
                write!(f, "trigonometric polynomial is negative on the circle: min = {min}")
            }
            Error::Pairing(m) => write!(f, "root pairing failed: {m}"),
            Error::RootFinding(m) => write!(f, "root finding failed: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
