//! Finitely supported projection-valued measures and the resolution of
//! identity view E((−∞, λ]).

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, CMatrix};
use crate::operator::HermitianOperator;
use crate::projection::Projection;
use crate::tol::Tolerances;

/// The map Δ ↦ E(Δ) with finite support. Support points are strictly
/// increasing and the projections resolve the identity.
#[derive(Clone, Debug)]
pub struct FiniteSpectralMeasure {
    support: Vec<(f64, Projection)>,
    dim: usize,
}

impl FiniteSpectralMeasure {
    /// Validates orthogonality, completeness (E(ℝ)=I) and distinctness of
    /// the support points. Orthogonality failures name the offending pair.
    pub fn new(mut support: Vec<(f64, Projection)>, dim: usize, tol: &Tolerances) -> Result<Self> {
        support.sort_by(|a, b| a.0.total_cmp(&b.0));
        support.retain(|(_, p)| p.rank() > 0);
        let mut zero_count = 0;
        for (pt, p) in &support {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { left: p.dim(), right: dim });
            }
            if *pt == 0.0 {
                zero_count += 1;
            }
        }
        if zero_count > 1 {
            return Err(Error::InvalidMeasure("more than one support point at 0".into()));
        }
        for i in 0..support.len() {
            for j in i + 1..support.len() {
                let prod = spectral_norm(&(support[i].1.matrix() * support[j].1.matrix()));
                if prod > tol.orth {
                    return Err(Error::InvalidMeasure(format!(
                        "projections at support points {} and {} are not orthogonal \
                         (product norm {prod:.3e})",
                        support[i].0, support[j].0
                    )));
                }
            }
        }
        let mut sum = CMatrix::zeros(dim, dim);
        for (_, p) in &support {
            sum += p.matrix();
        }
        let defect = spectral_norm(&(sum - CMatrix::identity(dim, dim)));
        if defect > 10.0 * tol.eq_scaled(1.0) {
            return Err(Error::InvalidMeasure(format!(
                "support projections do not sum to the identity (defect {defect:.3e})"
            )));
        }
        Ok(FiniteSpectralMeasure { support, dim })
    }

    /// Spectral measure of an operator: nonzero spectral points plus
    /// (0, N(A)) whenever the null space is nontrivial.
    pub fn of(a: &HermitianOperator, tol: &Tolerances) -> Result<Self> {
        let d = a.decompose(tol)?;
        let mut support: Vec<(f64, Projection)> =
            d.points().iter().map(|(l, p)| (*l, p.clone())).collect();
        if d.zero_projection().rank() > 0 {
            support.push((0.0, d.zero_projection().clone()));
        }
        support.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(FiniteSpectralMeasure { support, dim: a.dim() })
    }

    pub fn support(&self) -> &[(f64, Projection)] {
        &self.support
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// E(Δ): sum of the projections at support points belonging to Δ.
    pub fn evaluate(&self, set: &BorelSet) -> Projection {
        let mut sum = CMatrix::zeros(self.dim, self.dim);
        let mut rank = 0;
        for (pt, p) in &self.support {
            if set.contains(*pt) {
                sum += p.matrix();
                rank += p.rank();
            }
        }
        Projection::trusted(sum, rank)
    }

    /// E((−∞, λ]) — monotone nondecreasing in λ, identity once λ clears the
    /// top of the support.
    pub fn resolution(&self, lambda: f64) -> Projection {
        self.evaluate(&BorelSet::up_to(lambda))
    }

    /// Σ point·projection over the support.
    pub fn to_operator(&self, tol: &Tolerances) -> Result<HermitianOperator> {
        let mut sum = CMatrix::zeros(self.dim, self.dim);
        for (pt, p) in &self.support {
            sum += p.matrix().scale(*pt);
        }
        HermitianOperator::new(sum, tol)
    }
}
