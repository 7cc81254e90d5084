//! Finite-dimensional computational realization of the logic order ≼ on
//! bounded quantum observables.
//!
//! A Hermitian matrix A sits below B in the logic order when there is a
//! Hermitian C with AC = 0 and A + C = B; equivalently, every spectral
//! projection of A away from 0 is dominated by the matching one of B. This
//! crate decides A ≼ B, decides whether the supremum A∨B exists, constructs
//! it through the joined spectral measure, and produces a verifiable witness
//! (a pair of non-orthogonal eigenprojections at distinct nonzero
//! eigenvalues) when it does not.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything can be shared and parallelized freely.

pub mod borel;
pub mod error;
pub mod io;
mod linalg;
pub mod measure;
pub mod operator;
pub mod order;
pub mod projection;
pub mod sup;
pub mod testgen;
pub mod tol;

pub use borel::BorelSet;
pub use error::{Error, Result};
pub use io::OperatorFile;
pub use measure::FiniteSpectralMeasure;
pub use operator::{HermitianOperator, SpectralDecomposition};
pub use order::{check_factorization, check_upper_bound_restriction, logic_leq, OrderVerdict};
pub use projection::{is_orthogonal, join, meet, overlap_norm, proj_leq, Projection};
pub use sup::{
    build_join_measure, sup_exists, supremum, verify_supremum, ExistenceResult, SupremumReport,
    Witness,
};
pub use tol::Tolerances;
