//! Error type shared by every module of the toolkit.

use thiserror::Error;

/// Errors raised by constructors, evaluators and the evolver.
///
/// The variants map onto the CLI exit codes: everything except [`Error::Io`]
/// is a domain error (exit 1), I/O failures exit with 2.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A dimension argument is below the supported minimum.
    #[error("invalid dimension {n}: {reason}")]
    InvalidDimension { n: usize, reason: &'static str },

    /// A real parameter lies outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index argument does not address an existing object.
    #[error("index error: {0}")]
    Index(String),

    /// A spherical-trigonometry relation has no real solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// The requested (cone, window) combination is not supported.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// The operation is not defined for this cone family.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Vector families or meshes of inconsistent dimensions.
    #[error("structural error: {0}")]
    Structural(String),

    /// A mesh triangle has (numerically) zero area.
    #[error("degenerate triangle {index} (area {area:e})")]
    DegenerateTriangle { index: usize, area: f64 },

    /// Topology surgery could not be carried out.
    #[error("surgery error: {0}")]
    Surgery(String),

    /// The energy became non-finite during evolution.
    #[error("non-finite energy at step {step}")]
    NonFinite { step: usize },

    /// Malformed mesh text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// File-system failure.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Reject values of `alpha` outside `[0, 1]`.
///
/// The weight must stay in the unit interval for the functional to be lower
/// semicontinuous, so values above one are errors rather than warnings.
pub fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha = {alpha} must lie in [0, 1]")))
    }
}
