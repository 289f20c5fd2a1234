use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::grading::Degree;

/// Dimension trajectory of a direct system that failed to stabilize,
/// one entry per window degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub stages: usize,
    pub dims: Vec<(Degree, Vec<usize>)>,
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, dims)) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{d}: {dims:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree {degree} is not an element of {group}")]
    NotInGroup { degree: String, group: String },
    #[error("homomorphism is not well defined on torsion generator {0}")]
    IllDefinedOnTorsion(usize),
    #[error("group homomorphism is not surjective")]
    NotSurjective,
    #[error("invalid positivity certificate: {0}")]
    InvalidCertificate(String),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} did not stabilize within {cap} stages; trajectory: {trajectory}")]
    Unstabilized {
        what: String,
        cap: usize,
        trajectory: Trajectory,
    },
    #[error("window does not contain required degrees: {}", join_degrees(.missing))]
    WindowInadequate { missing: Vec<Degree> },
    #[error("fiber support over {degree} cannot be certified: {reason}")]
    CoverageNotCertified { degree: Degree, reason: String },
}

fn join_degrees(ds: &[Degree]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
