//! Error types shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// The variants are grouped by how a front end should treat them:
/// [`Error::is_validation`] failures mean the input itself is bad,
/// [`Error::is_precision`] failures ask for a re-run at higher precision,
/// and everything else is a numerical failure of the requested computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The leading Laurent coefficient at a pole fell below the precision
    /// floor; this signals a non-coprime numerator/denominator pair.
    #[error("degenerate pole: {0}")]
    DegeneratePole(String),

    /// Clearing the denominators of the logarithmic derivative left a
    /// residual above threshold; usually a root-finding failure on T or Q.
    #[error("inconsistent structure: {0}")]
    InconsistentStructure(String),

    #[error("not hyperexponential: {0}")]
    NotHyperexponential(String),

    /// Precision exhausted; the caller should re-run at doubled precision.
    #[error("precision: {0}")]
    Precision(String),

    #[error("saddle failure: {0}")]
    SaddleFailure(String),

    /// Query point lies on the Voronoi diagram within tolerance.
    #[error("boundary: {0}")]
    Boundary(String),

    #[error("domain: {0}")]
    Domain(String),

    #[error("branch ambiguity: {0}")]
    BranchAmbiguity(String),

    #[error("quadrature: {0}")]
    Quadrature(String),

    /// The amplitude vanishes because the evaluation point is a zero of P.
    #[error("singular amplitude: {0}")]
    SingularAmplitude(String),
}

impl Error {
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::NotHyperexponential(_)
                | Error::Domain(_)
                | Error::DegeneratePole(_)
        )
    }

    pub fn is_precision(&self) -> bool {
        matches!(self, Error::Precision(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
