//! Small dense-matrix helpers shared across modules.
//!
//! Everything here is built on Householder QR and the symmetric
//! eigendecomposition; the general SVD is avoided on purpose (its complex
//! path loses several digits on degenerate inputs, which this crate hits
//! constantly: projections have spectrum {0, 1}).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Largest |m[i][j] − conj(m[j][i])|.
pub fn max_asymmetry(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// (M + M*)/2 — exact Hermitian part.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Spectral norm (largest singular value): √λ_max(M*M).
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    gram.symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(0.0, f64::max)
        .max(0.0)
        .sqrt()
}

/// Spectral norm of a Hermitian matrix via its (real) eigenvalues.
pub fn hermitian_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .map(|l| l.abs())
        .fold(0.0, f64::max)
}

/// Unit vector v maximizing ‖Mv‖, with that norm: the leading right singular
/// direction, from the eigendecomposition of M*M.
pub fn leading_right_singular(m: &CMatrix) -> (DVector<Complex64>, f64) {
    let gram = m.adjoint() * m;
    let eigen = nalgebra::SymmetricEigen::new(gram);
    let (best, _) = eigen
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    let v = eigen.eigenvectors.column(best).into_owned();
    (v, eigen.eigenvalues[best].max(0.0).sqrt())
}

/// Orthonormal basis for the column span of `m` when the rank is already
/// known: the first `rank` Q-columns of the column-pivoted QR. Unlike the
/// thresholded variant this makes no assumptions about the sizes of the R
/// diagonal, which for a projection matrix can sit well below 1.
pub fn range_basis(m: &CMatrix, rank: usize) -> CMatrix {
    if rank == 0 {
        return CMatrix::zeros(m.nrows(), 0);
    }
    m.clone().col_piv_qr().q().columns(0, rank).into_owned()
}

/// Orthonormal basis for the column span of `m` via column-pivoted
/// Householder QR; pivots with |r_kk| ≤ `thresh` are rank-deficient
/// directions and get dropped. Columns of the result are orthonormal.
pub fn orthonormal_basis(m: &CMatrix, thresh: f64) -> CMatrix {
    let n = m.nrows();
    if m.ncols() == 0 {
        return CMatrix::zeros(n, 0);
    }
    let qr = m.clone().col_piv_qr();
    let q = qr.q();
    let r = qr.r();
    let mut rank = 0;
    while rank < r.nrows().min(r.ncols()) && r[(rank, rank)].norm() > thresh {
        rank += 1;
    }
    q.columns(0, rank).into_owned()
}
