//! Hermitian operators and spectral decomposition with tolerance-driven
//! eigenvalue clustering.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_norm, hermitian_part, max_asymmetry, orthonormal_basis, spectral_norm, CMatrix,
};
use crate::projection::Projection;
use crate::tol::Tolerances;

/// A bounded quantum observable at finite dimension: a Hermitian matrix
/// together with its operator norm.
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    mat: CMatrix,
    norm: f64,
}

impl HermitianOperator {
    /// Validates hermiticity (reporting the max asymmetry on failure) and
    /// stores the exact Hermitian part, so later eigensolves see a clean
    /// input.
    pub fn new(mat: CMatrix, tol: &Tolerances) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                left: mat.nrows(),
                right: mat.ncols(),
            });
        }
        let scale = mat.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let herm_tol = tol.eq_scaled(scale);
        let asym = max_asymmetry(&mat);
        if asym > herm_tol {
            return Err(Error::NotHermitian {
                max_asymmetry: asym,
                tol: herm_tol,
            });
        }
        let mat = hermitian_part(&mat);
        let norm = hermitian_norm(&mat);
        Ok(HermitianOperator { mat, norm })
    }

    pub fn zero(dim: usize) -> Self {
        HermitianOperator {
            mat: CMatrix::zeros(dim, dim),
            norm: 0.0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianOperator {
            mat: CMatrix::identity(dim, dim),
            norm: 1.0,
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mat = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let norm = diag.iter().map(|x| x.abs()).fold(0.0, f64::max);
        HermitianOperator { mat, norm }
    }

    /// λ·P for a projection — handy for building rank-deficient operators.
    pub fn scaled_projection(lambda: f64, p: &Projection) -> Self {
        let mat = p.matrix().scale(lambda);
        HermitianOperator {
            mat,
            norm: if p.rank() > 0 { lambda.abs() } else { 0.0 },
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Operator norm (largest |eigenvalue|).
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// ‖X−Y‖ ≤ eq_tol·max(1, ‖X‖, ‖Y‖).
    pub fn approx_eq(&self, other: &HermitianOperator, tol: &Tolerances) -> bool {
        self.dim() == other.dim()
            && hermitian_norm(&(&self.mat - &other.mat)) <= tol.eq_scaled(self.norm.max(other.norm))
    }

    /// Spectral decomposition with the default tolerance scaling
    /// (cluster and zero thresholds scaled by max(1, ‖A‖)).
    pub fn decompose(&self, tol: &Tolerances) -> Result<SpectralDecomposition> {
        self.decompose_with(tol.cluster_for(self.norm), tol.zero_for(self.norm))
    }

    /// Spectral decomposition with explicit absolute tolerances.
    ///
    /// Raw eigenvalues are merged single-linkage: sorted values whose gap is
    /// ≤ `cluster_tol` fall in one cluster, represented by the cluster mean.
    /// Clusters whose representative is within `zero_tol` of 0 are absorbed
    /// into the zero projection. Per-cluster eigenvector blocks are
    /// re-orthonormalized, since merging may combine eigensolver sub-blocks
    /// that are not orthogonal to each other.
    pub fn decompose_with(&self, cluster_tol: f64, zero_tol: f64) -> Result<SpectralDecomposition> {
        if cluster_tol < 0.0 || zero_tol < 0.0 {
            return Err(Error::Precondition(
                "cluster_tol and zero_tol must be nonnegative".into(),
            ));
        }
        let n = self.dim();
        let eigen = SymmetricEigen::new(self.mat.clone());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eigen.eigenvalues[i].total_cmp(&eigen.eigenvalues[j]));

        // Single-linkage clustering over the sorted raw eigenvalues.
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for &idx in &order {
            match clusters.last_mut() {
                Some(c)
                    if eigen.eigenvalues[idx] - eigen.eigenvalues[*c.last().unwrap()]
                        <= cluster_tol =>
                {
                    c.push(idx)
                }
                _ => clusters.push(vec![idx]),
            }
        }
        let reps: Vec<f64> = clusters
            .iter()
            .map(|c| c.iter().map(|&i| eigen.eigenvalues[i]).sum::<f64>() / c.len() as f64)
            .collect();
        for w in reps.windows(2) {
            if w[1] - w[0] <= 2.0 * cluster_tol {
                return Err(Error::ClusterAmbiguity {
                    a: w[0],
                    b: w[1],
                    tol: 2.0 * cluster_tol,
                });
            }
        }

        let block_projection = |members: &[usize]| -> Result<Projection> {
            let mut block = CMatrix::zeros(n, members.len());
            for (k, &i) in members.iter().enumerate() {
                block.set_column(k, &eigen.eigenvectors.column(i));
            }
            let basis = orthonormal_basis(&block, 0.5);
            if basis.ncols() != members.len() {
                return Err(Error::InvalidDecomposition(format!(
                    "eigenvector block of size {} has numerical rank {}",
                    members.len(),
                    basis.ncols()
                )));
            }
            Ok(Projection::from_orthonormal_basis(&basis))
        };

        let mut points = Vec::new();
        let mut zero_members: Vec<usize> = Vec::new();
        for (cluster, rep) in clusters.iter().zip(&reps) {
            if rep.abs() <= zero_tol {
                zero_members.extend_from_slice(cluster);
            } else {
                points.push((*rep, block_projection(cluster)?));
            }
        }
        let zero_projection = if zero_members.is_empty() {
            Projection::zero(n)
        } else {
            block_projection(&zero_members)?
        };

        Ok(SpectralDecomposition {
            points,
            zero_projection,
            cluster_tol,
            zero_tol,
        })
    }

    /// Projection onto the closure of the range: sum of the eigenprojections
    /// at nonzero spectral points. Equals I − null_projection(A).
    pub fn range_projection(&self, tol: &Tolerances) -> Result<Projection> {
        Ok(self.decompose(tol)?.zero_projection().complement())
    }

    /// Projection onto null(A).
    pub fn null_projection(&self, tol: &Tolerances) -> Result<Projection> {
        Ok(self.decompose(tol)?.zero_projection().clone())
    }

    /// Numerical order A ≤ B: smallest eigenvalue of B−A ≥ −psd_tol.
    pub fn numeric_leq(&self, other: &HermitianOperator, tol: &Tolerances) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let diff = &other.mat - &self.mat;
        let min_eig = diff
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        Ok(min_eig >= -tol.eq_scaled(self.norm.max(other.norm)))
    }
}

/// Distinct eigenvalues with mutually orthogonal eigenprojections, plus the
/// projection onto the null space.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    points: Vec<(f64, Projection)>,
    zero_projection: Projection,
    cluster_tol: f64,
    zero_tol: f64,
}

impl SpectralDecomposition {
    pub fn from_parts(
        points: Vec<(f64, Projection)>,
        zero_projection: Projection,
        cluster_tol: f64,
        zero_tol: f64,
        tol: &Tolerances,
    ) -> Result<Self> {
        let d = SpectralDecomposition {
            points,
            zero_projection,
            cluster_tol,
            zero_tol,
        };
        d.validate(tol)?;
        Ok(d)
    }

    /// (eigenvalue, eigenprojection) pairs, strictly increasing in eigenvalue.
    pub fn points(&self) -> &[(f64, Projection)] {
        &self.points
    }

    pub fn zero_projection(&self) -> &Projection {
        &self.zero_projection
    }

    pub fn dim(&self) -> usize {
        self.zero_projection.dim()
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    /// Checks every structural invariant, naming the first one that fails.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        let n = self.dim();
        for w in self.points.windows(2) {
            if w[1].0 - w[0].0 <= self.cluster_tol {
                return Err(Error::InvalidDecomposition(format!(
                    "eigenvalues {} and {} are not separated by more than cluster_tol",
                    w[0].0, w[1].0
                )));
            }
        }
        let mut projs: Vec<&Projection> = self.points.iter().map(|(_, p)| p).collect();
        projs.push(&self.zero_projection);
        for (lambda, _) in &self.points {
            if lambda.abs() <= self.zero_tol {
                return Err(Error::InvalidDecomposition(format!(
                    "nonzero spectral point {lambda} lies within zero_tol of 0"
                )));
            }
        }
        for i in 0..projs.len() {
            if projs[i].dim() != n {
                return Err(Error::InvalidDecomposition(
                    "projection dimension mismatch".into(),
                ));
            }
            for j in i + 1..projs.len() {
                let prod = spectral_norm(&(projs[i].matrix() * projs[j].matrix()));
                if prod > tol.orth {
                    return Err(Error::InvalidDecomposition(format!(
                        "eigenprojections {i} and {j} are not orthogonal (product norm {prod:.3e})"
                    )));
                }
            }
        }
        let mut sum = CMatrix::zeros(n, n);
        for p in &projs {
            sum += p.matrix();
        }
        let defect = spectral_norm(&(sum - CMatrix::identity(n, n)));
        if defect > tol.eq_scaled(1.0) * 10.0 {
            return Err(Error::InvalidDecomposition(format!(
                "eigenprojections do not resolve the identity (defect {defect:.3e})"
            )));
        }
        Ok(())
    }

    /// Σ λᵢ·Pᵢ.
    pub fn synthesize(&self, tol: &Tolerances) -> Result<HermitianOperator> {
        self.validate(tol)?;
        let n = self.dim();
        let mut sum = CMatrix::zeros(n, n);
        for (lambda, p) in &self.points {
            sum += p.matrix().scale(*lambda);
        }
        HermitianOperator::new(sum, tol)
    }
}
