//! Supremum of two observables under the logic order: existence test,
//! join spectral measure, construction, and verification.
//!
//! At finite dimension the quantification over disjoint Borel pairs avoiding
//! 0 collapses to singleton pairs {λ}, {μ} of distinct nonzero spectral
//! points: every Borel set meets the finite spectrum in finitely many points
//! and disjointness means no shared point. The existence test therefore runs
//! O(kₐ·k_b) projection products.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::spectral_norm;
use crate::measure::FiniteSpectralMeasure;
use crate::operator::{HermitianOperator, SpectralDecomposition};
use crate::order::{logic_leq, match_points, OrderVerdict};
use crate::projection::{join, meet, overlap_norm, Projection};
use crate::tol::Tolerances;

/// Counterexample to supremum existence: two distinct nonzero eigenvalues
/// whose eigenprojections overlap. Physically, two disjoint-outcome quantum
/// events that can co-occur.
#[derive(Clone, Debug)]
pub struct Witness {
    pub lambda: f64,
    pub mu: f64,
    pub overlap_norm: f64,
    /// Leading right singular direction of P^A({λ})·P^B({μ}).
    pub unit_vector: DVector<Complex64>,
}

/// Outcome of the existence test.
#[derive(Clone, Debug)]
pub struct ExistenceResult {
    pub exists: bool,
    pub witness: Option<Witness>,
    pub checked_pairs: usize,
    /// M = max(‖A‖, ‖B‖); the supremum's spectrum lives in [−M, M].
    pub bound: f64,
}

/// Does A ∨ B exist? Tests orthogonality of eigenprojections at every pair
/// of unmatched nonzero spectral points. On failure the pair with the
/// largest overlap (eigenvalue-lexicographic tie-break) becomes the witness.
pub fn sup_exists(
    a: &HermitianOperator,
    b: &HermitianOperator,
    tol: &Tolerances,
) -> Result<ExistenceResult> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let da = a.decompose(tol)?;
    let db = b.decompose(tol)?;
    Ok(sup_exists_from(&da, &db, a.norm().max(b.norm()), tol))
}

fn sup_exists_from(
    da: &SpectralDecomposition,
    db: &SpectralDecomposition,
    bound: f64,
    tol: &Tolerances,
) -> ExistenceResult {
    let match_tol = 2.0 * da.cluster_tol().max(db.cluster_tol());
    let mut checked_pairs = 0;
    let mut worst: Option<(f64, f64, f64, &Projection, &Projection)> = None;
    for (lambda, p) in da.points() {
        for (mu, q) in db.points() {
            if (lambda - mu).abs() <= match_tol {
                continue; // treated as the same support point
            }
            checked_pairs += 1;
            let overlap = overlap_norm(p, q);
            if overlap > tol.orth && worst.map_or(true, |(o, ..)| overlap > o) {
                worst = Some((overlap, *lambda, *mu, p, q));
            }
        }
    }
    match worst {
        None => ExistenceResult { exists: true, witness: None, checked_pairs, bound },
        Some((overlap, lambda, mu, p, q)) => {
            let unit_vector = leading_right_singular_vector(p, q);
            ExistenceResult {
                exists: false,
                witness: Some(Witness { lambda, mu, overlap_norm: overlap, unit_vector }),
                checked_pairs,
                bound,
            }
        }
    }
}

fn leading_right_singular_vector(p: &Projection, q: &Projection) -> DVector<Complex64> {
    crate::linalg::leading_right_singular(&(p.matrix() * q.matrix())).0
}

/// The join spectral measure E of the pair: at every matched or unmatched
/// nonzero spectral point the join of the two eigenprojections (an absent
/// factor contributes the zero projection), plus N(A)∧N(B) at 0.
///
/// Orthogonality of the resulting support is the substance of the
/// construction, so it is asserted by the measure constructor rather than
/// assumed; a failure reports the offending pair of support points.
pub fn build_join_measure(
    a: &HermitianOperator,
    b: &HermitianOperator,
    tol: &Tolerances,
) -> Result<FiniteSpectralMeasure> {
    let existence = sup_exists(a, b, tol)?;
    if let Some(w) = existence.witness {
        return Err(Error::NoSupremum {
            lambda: w.lambda,
            mu: w.mu,
            overlap: w.overlap_norm,
        });
    }
    let da = a.decompose(tol)?;
    let db = b.decompose(tol)?;
    let a_pts: Vec<f64> = da.points().iter().map(|(l, _)| *l).collect();
    let b_pts: Vec<f64> = db.points().iter().map(|(l, _)| *l).collect();
    let match_tol = 2.0 * da.cluster_tol().max(db.cluster_tol());
    let assignment = match_points(&a_pts, &b_pts, match_tol)?;

    let mut support: Vec<(f64, Projection)> = Vec::new();
    let mut b_matched = vec![false; b_pts.len()];
    for (i, (lambda, p)) in da.points().iter().enumerate() {
        match assignment[i] {
            // Shared point: join of both factors, A's value as representative.
            Some(j) => {
                b_matched[j] = true;
                support.push((*lambda, join(p, &db.points()[j].1, tol)?));
            }
            None => support.push((*lambda, p.clone())),
        }
    }
    for (j, (mu, q)) in db.points().iter().enumerate() {
        if !b_matched[j] {
            support.push((*mu, q.clone()));
        }
    }
    let common_null = meet(da.zero_projection(), db.zero_projection(), tol)?;
    if common_null.rank() > 0 {
        support.push((0.0, common_null));
    }
    FiniteSpectralMeasure::new(support, a.dim(), tol)
}

/// A ∨ B, synthesized from the join measure. Fails with the witness attached
/// when the supremum does not exist.
pub fn supremum(
    a: &HermitianOperator,
    b: &HermitianOperator,
    tol: &Tolerances,
) -> Result<HermitianOperator> {
    build_join_measure(a, b, tol)?.to_operator(tol)
}

/// Per-bound outcome inside a [`SupremumReport`].
#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub index: usize,
    /// Whether this F actually is a common upper bound of A and B.
    pub is_upper_bound: bool,
    /// S ≼ F verdict, evaluated only for genuine common upper bounds.
    pub sup_leq_bound: Option<OrderVerdict>,
}

/// Verification report for a claimed supremum S of (A, B).
#[derive(Clone, Debug)]
pub struct SupremumReport {
    pub leq_a: OrderVerdict,
    pub leq_b: OrderVerdict,
    /// max over nonzero support points λ of ‖P^S({λ}) − P^A({λ})∨P^B({λ})‖.
    /// Zero (within tolerance) exactly when S carries the join measure, which
    /// is the least-upper-bound certificate.
    pub certificate_deviation: f64,
    pub bound_checks: Vec<BoundCheck>,
}

impl SupremumReport {
    pub fn all_pass(&self, tol: &Tolerances) -> bool {
        self.leq_a.holds
            && self.leq_b.holds
            && self.certificate_deviation <= tol.eq_scaled(1.0) * 10.0
            && self
                .bound_checks
                .iter()
                .all(|c| !c.is_upper_bound || c.sup_leq_bound.as_ref().is_some_and(|v| v.holds))
    }
}

/// Check a claimed supremum S: both order relations, the spectral
/// least-upper-bound certificate, and S ≼ F for every common upper bound F
/// in `bounds`. Failures are carried in the report, not raised.
pub fn verify_supremum(
    a: &HermitianOperator,
    b: &HermitianOperator,
    s: &HermitianOperator,
    bounds: &[HermitianOperator],
    tol: &Tolerances,
) -> Result<SupremumReport> {
    let leq_a = logic_leq(a, s, tol)?;
    let leq_b = logic_leq(b, s, tol)?;

    let da = a.decompose(tol)?;
    let db = b.decompose(tol)?;
    let ds = s.decompose(tol)?;
    let match_tol = 2.0 * da.cluster_tol().max(db.cluster_tol()).max(ds.cluster_tol());

    // Candidate support values: union of all nonzero points of S, A and B,
    // merged within match_tol, so a point missing from S still gets checked.
    let mut values: Vec<f64> = ds
        .points()
        .iter()
        .chain(da.points())
        .chain(db.points())
        .map(|(l, _)| *l)
        .collect();
    values.sort_by(f64::total_cmp);
    values.dedup_by(|b, a| (*b - *a).abs() <= match_tol);

    let dim = a.dim();
    let proj_at = |d: &SpectralDecomposition, v: f64| -> Projection {
        d.points()
            .iter()
            .find(|(l, _)| (l - v).abs() <= match_tol)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| Projection::zero(dim))
    };
    let mut certificate_deviation = 0.0f64;
    for v in values {
        let ps = proj_at(&ds, v);
        let expected = join(&proj_at(&da, v), &proj_at(&db, v), tol)?;
        let dev = spectral_norm(&(ps.matrix() - expected.matrix()));
        certificate_deviation = certificate_deviation.max(dev);
    }

    let mut bound_checks = Vec::new();
    for (index, f) in bounds.iter().enumerate() {
        let is_upper_bound = logic_leq(a, f, tol)?.holds && logic_leq(b, f, tol)?.holds;
        let sup_leq_bound = if is_upper_bound {
            Some(logic_leq(s, f, tol)?)
        } else {
            None
        };
        bound_checks.push(BoundCheck { index, is_upper_bound, sup_leq_bound });
    }

    Ok(SupremumReport { leq_a, leq_b, certificate_deviation, bound_checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn op(d: &[f64]) -> HermitianOperator {
        HermitianOperator::from_real_diagonal(d)
    }

    fn e1_proj(dim: usize) -> Projection {
        let mut v = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        v[0] = Complex64::new(1.0, 0.0);
        Projection::from_vector(&v)
    }

    fn oblique_proj(dim: usize) -> Projection {
        // (e1+e2)/√2
        let mut v = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        v[0] = Complex64::new(1.0, 0.0);
        v[1] = Complex64::new(1.0, 0.0);
        Projection::from_vector(&v)
    }

    #[test]
    fn diagonal_pair_exists() {
        let t = tols();
        let r = sup_exists(&op(&[1.0, 0.0]), &op(&[0.0, 2.0]), &t).unwrap();
        assert!(r.exists && r.witness.is_none());
        assert_eq!(r.checked_pairs, 1);
    }

    #[test]
    fn scalar_pair_fails_with_full_overlap() {
        let t = tols();
        let r = sup_exists(&op(&[1.0]), &op(&[2.0]), &t).unwrap();
        assert!(!r.exists);
        let w = r.witness.unwrap();
        assert_eq!((w.lambda, w.mu), (1.0, 2.0));
        assert!((w.overlap_norm - 1.0).abs() < 1e-12);
        assert!((w.unit_vector.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn same_eigenvalue_rank_one_pair_exists_vacuously() {
        let t = tols();
        let a = HermitianOperator::scaled_projection(1.0, &e1_proj(3));
        let b = HermitianOperator::scaled_projection(1.0, &oblique_proj(3));
        let r = sup_exists(&a, &b, &t).unwrap();
        assert!(r.exists);
        assert_eq!(r.checked_pairs, 0);
    }

    #[test]
    fn join_measure_of_diagonals() {
        let t = tols();
        let e = build_join_measure(&op(&[1.0, 0.0, 0.0]), &op(&[0.0, 2.0, 0.0]), &t).unwrap();
        let pts: Vec<f64> = e.support().iter().map(|(p, _)| *p).collect();
        assert_eq!(pts, vec![0.0, 1.0, 2.0]);
        assert_eq!(e.support()[0].1.rank(), 1);
        assert!(e
            .to_operator(&t)
            .unwrap()
            .approx_eq(&op(&[1.0, 2.0, 0.0]), &t));
    }

    #[test]
    fn join_measure_of_rank_one_pair() {
        let t = tols();
        let a = HermitianOperator::scaled_projection(1.0, &e1_proj(3));
        let b = HermitianOperator::scaled_projection(1.0, &oblique_proj(3));
        let e = build_join_measure(&a, &b, &t).unwrap();
        assert_eq!(e.support().len(), 2);
        assert_eq!(e.support()[0].0, 0.0);
        assert_eq!(e.support()[0].1.rank(), 1);
        assert_eq!(e.support()[1].1.rank(), 2);
        assert!(e
            .to_operator(&t)
            .unwrap()
            .approx_eq(&op(&[1.0, 1.0, 0.0]), &t));
    }

    #[test]
    fn join_measure_with_self_is_own_measure() {
        let t = tols();
        let a = op(&[-1.0, 0.0, 2.0]);
        let e = build_join_measure(&a, &a, &t).unwrap();
        assert!(e.to_operator(&t).unwrap().approx_eq(&a, &t));
    }

    #[test]
    fn supremum_examples() {
        let t = tols();
        let s = supremum(&op(&[1.0, 0.0, 0.0]), &op(&[0.0, 2.0, 0.0]), &t).unwrap();
        assert!(s.approx_eq(&op(&[1.0, 2.0, 0.0]), &t));

        // For projections the supremum is the lattice join.
        let p = HermitianOperator::scaled_projection(1.0, &e1_proj(3));
        let q = HermitianOperator::scaled_projection(1.0, &oblique_proj(3));
        let s = supremum(&p, &q, &t).unwrap();
        assert!(s.approx_eq(&op(&[1.0, 1.0, 0.0]), &t));
    }

    #[test]
    fn supremum_unit_and_idempotence() {
        let t = tols();
        let a = op(&[1.0, -2.0, 0.0]);
        assert!(supremum(&a, &HermitianOperator::zero(3), &t)
            .unwrap()
            .approx_eq(&a, &t));
        assert!(supremum(&a, &a, &t).unwrap().approx_eq(&a, &t));
    }

    #[test]
    fn supremum_error_carries_witness() {
        let t = tols();
        match supremum(&op(&[1.0]), &op(&[2.0]), &t) {
            Err(Error::NoSupremum { lambda, mu, overlap }) => {
                assert_eq!((lambda, mu), (1.0, 2.0));
                assert!((overlap - 1.0).abs() < 1e-12);
            }
            other => panic!("expected NoSupremum, got {other:?}"),
        }
    }

    #[test]
    fn verify_constructed_supremum() {
        let t = tols();
        let a = HermitianOperator::scaled_projection(1.0, &e1_proj(3));
        let b = HermitianOperator::scaled_projection(1.0, &oblique_proj(3));
        let s = supremum(&a, &b, &t).unwrap();
        let report = verify_supremum(&a, &b, &s, &[], &t).unwrap();
        assert!(report.all_pass(&t));
        assert!(report.certificate_deviation < 1e-10);
    }

    #[test]
    fn sum_is_not_the_supremum() {
        let t = tols();
        let a = HermitianOperator::scaled_projection(1.0, &e1_proj(3));
        let b = HermitianOperator::scaled_projection(1.0, &oblique_proj(3));
        let sum = HermitianOperator::new(a.matrix() + b.matrix(), &t).unwrap();
        let report = verify_supremum(&a, &b, &sum, &[], &t).unwrap();
        assert!(report.certificate_deviation > 1e-3);
        assert!(!report.all_pass(&t));
    }
}
