use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max asymmetry {max_asymmetry:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { max_asymmetry: f64, tol: f64 },

    #[error("matrix is not a projection: {reason}")]
    NotProjection { reason: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error(
        "eigenvalue clusters at {a} and {b} are separated by less than 2*cluster_tol \
         ({tol:.3e}); retry with a larger clustering tolerance"
    )]
    ClusterAmbiguity { a: f64, b: f64, tol: f64 },

    #[error("spectral decomposition invariant violated: {0}")]
    InvalidDecomposition(String),

    #[error("spectral measure invariant violated: {0}")]
    InvalidMeasure(String),

    #[error(
        "eigenvalue matching is not injective: {a1} and {a2} both match {b} within {tol:.3e}; \
         the pair is ill-conditioned at this clustering tolerance"
    )]
    AmbiguousMatching { a1: f64, a2: f64, b: f64, tol: f64 },

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error(
        "supremum does not exist: eigenprojections at {lambda} (left operand) and {mu} \
         (right operand) overlap with norm {overlap:.6e}"
    )]
    NoSupremum { lambda: f64, mu: f64, overlap: f64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid spectrum spec: {0}")]
    BadSpectrum(String),
}

pub type Result<T> = std::result::Result<T, Error>;
