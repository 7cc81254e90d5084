//! Orthogonal projections (quantum events) and their lattice operations.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, max_asymmetry, orthonormal_basis, range_basis, spectral_norm, CMatrix};
use crate::tol::Tolerances;

/// A quantum event: an idempotent Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Projection {
    mat: CMatrix,
    rank: usize,
}

impl Projection {
    /// Validates hermiticity, idempotency and integer trace, then stores the
    /// Hermitian part of `mat`.
    pub fn new(mat: CMatrix, tol: &Tolerances) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                left: mat.nrows(),
                right: mat.ncols(),
            });
        }
        let asym = max_asymmetry(&mat);
        if asym > tol.idem {
            return Err(Error::NotProjection {
                reason: format!("not Hermitian, max asymmetry {asym:.3e}"),
            });
        }
        let mat = hermitian_part(&mat);
        let idem_defect = spectral_norm(&(&mat * &mat - &mat));
        if idem_defect > tol.idem {
            return Err(Error::NotProjection {
                reason: format!("idempotency defect {idem_defect:.3e}"),
            });
        }
        let trace = mat.trace().re;
        let rank = trace.round();
        if (trace - rank).abs() > 0.1 || rank < -0.5 {
            return Err(Error::NotProjection {
                reason: format!("trace {trace} is not close to an integer rank"),
            });
        }
        Ok(Projection {
            mat,
            rank: rank as usize,
        })
    }

    /// Internal constructor for matrices known to be projections by
    /// construction (sums of orthogonal projections, B·B* of orthonormal B).
    pub(crate) fn trusted(mat: CMatrix, rank: usize) -> Self {
        Projection { mat, rank }
    }

    pub fn zero(dim: usize) -> Self {
        Projection {
            mat: CMatrix::zeros(dim, dim),
            rank: 0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Projection {
            mat: CMatrix::identity(dim, dim),
            rank: dim,
        }
    }

    /// P = B·B* for a matrix with orthonormal columns.
    pub fn from_orthonormal_basis(basis: &CMatrix) -> Self {
        let rank = basis.ncols();
        Projection {
            mat: basis * basis.adjoint(),
            rank,
        }
    }

    /// Rank-1 projection onto the line spanned by `v` (normalized here).
    pub fn from_vector(v: &DVector<Complex64>) -> Self {
        let n = v.norm();
        assert!(n > 0.0, "cannot project onto the zero vector");
        let u = v.map(|x| x / Complex64::from(n));
        let basis = CMatrix::from_columns(&[u]);
        Projection::from_orthonormal_basis(&basis)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// Orthonormal basis of the range (columns). The rank is known, so this
    /// takes exactly that many pivoted QR columns; thresholding the R
    /// diagonal would be wrong here (projection columns can all be short).
    pub fn basis(&self) -> CMatrix {
        range_basis(&self.mat, self.rank)
    }

    /// I − P.
    pub fn complement(&self) -> Projection {
        let n = self.dim();
        Projection {
            mat: CMatrix::identity(n, n) - &self.mat,
            rank: n - self.rank,
        }
    }

    pub fn approx_eq(&self, other: &Projection, tol: &Tolerances) -> bool {
        self.dim() == other.dim() && spectral_norm(&(&self.mat - &other.mat)) <= tol.eq_scaled(1.0)
    }
}

fn check_dims(p: &Projection, q: &Projection) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(())
}

/// P ∨ Q: projection onto range(P) + range(Q).
///
/// Concatenates the two orthonormal range bases and re-orthonormalizes with a
/// rank-revealing threshold, so nearly-parallel subspaces collapse instead of
/// inflating the rank.
pub fn join(p: &Projection, q: &Projection, tol: &Tolerances) -> Result<Projection> {
    check_dims(p, q)?;
    let n = p.dim();
    let (bp, bq) = (p.basis(), q.basis());
    let cols = bp.ncols() + bq.ncols();
    if cols == 0 {
        return Ok(Projection::zero(n));
    }
    let mut concat = CMatrix::zeros(n, cols);
    concat.columns_mut(0, bp.ncols()).copy_from(&bp);
    concat.columns_mut(bp.ncols(), bq.ncols()).copy_from(&bq);
    let basis = orthonormal_basis(&concat, tol.rank_tol(n));
    Ok(Projection::from_orthonormal_basis(&basis))
}

/// P ∧ Q: projection onto range(P) ∩ range(Q), via I − (I−P)∨(I−Q).
pub fn meet(p: &Projection, q: &Projection, tol: &Tolerances) -> Result<Projection> {
    check_dims(p, q)?;
    Ok(join(&p.complement(), &q.complement(), tol)?.complement())
}

/// Range containment test: P ≤ Q iff ‖P − QP‖ ≤ orth_tol.
pub fn proj_leq(p: &Projection, q: &Projection, tol: &Tolerances) -> Result<bool> {
    check_dims(p, q)?;
    Ok(spectral_norm(&(p.matrix() - q.matrix() * p.matrix())) <= tol.orth)
}

/// True iff ‖PQ‖ ≤ orth_tol. Symmetric because ‖PQ‖ = ‖(PQ)*‖ = ‖QP‖.
pub fn is_orthogonal(p: &Projection, q: &Projection, tol: &Tolerances) -> Result<bool> {
    check_dims(p, q)?;
    Ok(overlap_norm(p, q) <= tol.orth)
}

/// ‖PQ‖ — the overlap used in witnesses.
pub fn overlap_norm(p: &Projection, q: &Projection) -> f64 {
    spectral_norm(&(p.matrix() * q.matrix()))
}
