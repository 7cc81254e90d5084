//! The logic order A ≼ B, decided by two independent routes, plus the
//! structural checks behind it (factorization through P_A and upper-bound
//! spectral restriction).

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::linalg::spectral_norm;
use crate::measure::FiniteSpectralMeasure;
use crate::operator::{HermitianOperator, SpectralDecomposition};
use crate::projection::Projection;
use crate::tol::Tolerances;

/// Verdict of a logic-order test. The spectral route is canonical; the
/// algebraic route (AC = 0 with C = B−A) is recorded as a cross-check.
/// Disagreement with a defect inside the ambiguity band [tol/10, 10·tol]
/// is reported via `ambiguous` rather than asserted away.
#[derive(Clone, Debug)]
pub struct OrderVerdict {
    pub holds: bool,
    pub route_algebraic: bool,
    pub route_spectral: bool,
    /// The C with B = A + C, present when the order holds.
    pub residual: Option<HermitianOperator>,
    /// Max violation norm over the canonical (spectral) route.
    pub defect: f64,
    pub ambiguous: bool,
}

/// Greedy nearest-value injective matching of spectral points.
/// Returns, for each point of `a_pts`, the index of the matched point of
/// `b_pts` (or None). Two `a` points claiming the same `b` point mean the
/// clustering was too coarse for this pair.
pub(crate) fn match_points(
    a_pts: &[f64],
    b_pts: &[f64],
    match_tol: f64,
) -> Result<Vec<Option<usize>>> {
    let mut assignment: Vec<Option<usize>> = vec![None; a_pts.len()];
    let mut taken: Vec<Option<usize>> = vec![None; b_pts.len()];
    for (i, &lambda) in a_pts.iter().enumerate() {
        let mut best: Option<(usize, f64)> = None;
        for (j, &mu) in b_pts.iter().enumerate() {
            let d = (lambda - mu).abs();
            if d <= match_tol && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, _)) = best {
            if let Some(prev) = taken[j] {
                return Err(Error::AmbiguousMatching {
                    a1: a_pts[prev],
                    a2: lambda,
                    b: b_pts[j],
                    tol: match_tol,
                });
            }
            taken[j] = Some(i);
            assignment[i] = Some(j);
        }
    }
    Ok(assignment)
}

fn check_same_dim(a: &HermitianOperator, b: &HermitianOperator) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

/// Decide A ≼ B.
///
/// Algebraic route: C := B−A, test ‖AC‖ ≤ eq_tol·max(1, ‖A‖·‖B‖).
/// Spectral route: every nonzero spectral point λ of A must match a spectral
/// point of B and satisfy P^A({λ}) ≤ P^B({λ}).
pub fn logic_leq(
    a: &HermitianOperator,
    b: &HermitianOperator,
    tol: &Tolerances,
) -> Result<OrderVerdict> {
    check_same_dim(a, b)?;
    let residual_mat = b.matrix() - a.matrix();
    let alg_defect = spectral_norm(&(a.matrix() * &residual_mat));
    let alg_scale = (a.norm() * b.norm()).max(1.0);
    let route_algebraic = alg_defect <= tol.eq * alg_scale;

    let da = a.decompose(tol)?;
    let db = b.decompose(tol)?;
    let spectral_defect = spectral_route_defect(&da, &db)?;
    let route_spectral = spectral_defect <= tol.orth;

    let holds = route_spectral;
    let residual = if holds {
        Some(HermitianOperator::new(residual_mat, tol)?)
    } else {
        None
    };
    Ok(OrderVerdict {
        holds,
        route_algebraic,
        route_spectral,
        residual,
        defect: spectral_defect,
        ambiguous: spectral_defect >= tol.orth / 10.0 && spectral_defect <= tol.orth * 10.0,
    })
}

fn spectral_route_defect(da: &SpectralDecomposition, db: &SpectralDecomposition) -> Result<f64> {
    let a_pts: Vec<f64> = da.points().iter().map(|(l, _)| *l).collect();
    let b_pts: Vec<f64> = db.points().iter().map(|(l, _)| *l).collect();
    let match_tol = 2.0 * da.cluster_tol().max(db.cluster_tol());
    let assignment = match_points(&a_pts, &b_pts, match_tol)?;
    let mut defect = 0.0f64;
    for (i, (_, p)) in da.points().iter().enumerate() {
        let violation = match assignment[i] {
            // ‖P − QP‖: range-containment defect against the matched point.
            Some(j) => {
                let q = &db.points()[j].1;
                spectral_norm(&(p.matrix() - q.matrix() * p.matrix()))
            }
            // Unmatched nonzero point of A: the full projection is violated.
            None => 1.0,
        };
        defect = defect.max(violation);
    }
    Ok(defect)
}

/// If A ≼ B then A = B·P_A. Returns ‖A − B·P_A‖, which the contract
/// bounds by eq_tol·max(1, ‖B‖).
pub fn check_factorization(
    a: &HermitianOperator,
    b: &HermitianOperator,
    tol: &Tolerances,
) -> Result<f64> {
    if !logic_leq(a, b, tol)?.holds {
        return Err(Error::Precondition(
            "check_factorization requires A ≼ B".into(),
        ));
    }
    let p_a = a.range_projection(tol)?;
    Ok(spectral_norm(&(a.matrix() - b.matrix() * p_a.matrix())))
}

/// Upper-bound spectral restriction. For A ≼ F returns the deviation norm of
/// the applicable case:
///   0 ∉ Δ:    ‖P^A(Δ) − P^F(Δ)P_A‖
///   Δ = {0}:  ‖P^A({0}) − N(A)‖
///   0 ∈ Δ:    ‖P^A(Δ) − (P^F(Δ\{0})P_A + N(A))‖
pub fn check_upper_bound_restriction(
    a: &HermitianOperator,
    f: &HermitianOperator,
    delta: &BorelSet,
    tol: &Tolerances,
) -> Result<f64> {
    if !logic_leq(a, f, tol)?.holds {
        return Err(Error::Precondition(
            "check_upper_bound_restriction requires A ≼ F".into(),
        ));
    }
    let e_a = FiniteSpectralMeasure::of(a, tol)?;
    let lhs: Projection = e_a.evaluate(delta);
    let n_a = a.null_projection(tol)?;
    if delta.is_singleton_zero() {
        return Ok(spectral_norm(&(lhs.matrix() - n_a.matrix())));
    }
    let e_f = FiniteSpectralMeasure::of(f, tol)?;
    let p_a = n_a.complement();
    if !delta.contains(0.0) {
        let rhs = e_f.evaluate(delta).matrix() * p_a.matrix();
        Ok(spectral_norm(&(lhs.matrix() - rhs)))
    } else {
        let punctured = delta.clone().without(0.0);
        let rhs = e_f.evaluate(&punctured).matrix() * p_a.matrix() + n_a.matrix();
        Ok(spectral_norm(&(lhs.matrix() - rhs)))
    }
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

    #[test]
    fn zero_below_everything() {
        let t = tols();
        for b in [op(&[1.0, -2.0]), HermitianOperator::zero(2), op(&[0.0, 3.0])] {
            let v = logic_leq(&HermitianOperator::zero(2), &b, &t).unwrap();
            assert!(v.holds && v.route_algebraic && v.route_spectral);
            assert!(v.residual.as_ref().unwrap().approx_eq(&b, &t));
        }
    }

    #[test]
    fn diagonal_holds_with_residual() {
        let t = tols();
        let v = logic_leq(&op(&[1.0, 0.0]), &op(&[1.0, 2.0]), &t).unwrap();
        assert!(v.holds);
        assert!(v.residual.unwrap().approx_eq(&op(&[0.0, 2.0]), &t));
        assert!(v.defect < 1e-12);
    }

    #[test]
    fn diagonal_fails_when_values_move() {
        let t = tols();
        // C = diag(1,2), AC = diag(1,0) ≠ 0.
        let v = logic_leq(&op(&[1.0, 0.0]), &op(&[2.0, 2.0]), &t).unwrap();
        assert!(!v.holds && !v.route_algebraic && !v.route_spectral);
        assert!(v.residual.is_none());
        assert!(v.defect > 0.5);
    }

    #[test]
    fn logic_and_numeric_orders_differ() {
        let t = tols();
        let a = HermitianOperator::zero(2);
        let b = op(&[-1.0, -1.0]);
        assert!(logic_leq(&a, &b, &t).unwrap().holds);
        assert!(!a.numeric_leq(&b, &t).unwrap());
    }

    #[test]
    fn factorization_on_examples() {
        let t = tols();
        assert!(check_factorization(&op(&[1.0, 0.0]), &op(&[1.0, 2.0]), &t).unwrap() < 1e-12);
        let a = op(&[1.0, -2.0]);
        assert!(check_factorization(&a, &a, &t).unwrap() < 1e-12);
        assert!(
            check_factorization(&HermitianOperator::zero(2), &op(&[4.0, 5.0]), &t).unwrap()
                < 1e-12
        );
    }

    #[test]
    fn factorization_requires_order() {
        let t = tols();
        let r = check_factorization(&op(&[1.0, 0.0]), &op(&[2.0, 2.0]), &t);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn upper_bound_restriction_all_cases() {
        let t = tols();
        let a = op(&[1.0, 0.0]);
        let f = op(&[1.0, 2.0]);
        let no_zero = BorelSet::parse("(0.5,1.5)").unwrap();
        assert!(check_upper_bound_restriction(&a, &f, &no_zero, &t).unwrap() < 1e-12);
        let just_zero = BorelSet::singleton(0.0);
        assert!(check_upper_bound_restriction(&a, &f, &just_zero, &t).unwrap() < 1e-12);
        let with_zero = BorelSet::parse("[-1,1]").unwrap();
        assert!(check_upper_bound_restriction(&a, &f, &with_zero, &t).unwrap() < 1e-12);
    }

    #[test]
    fn matching_rejects_double_claim() {
        let r = match_points(&[1.0, 1.5], &[1.2], 1.0);
        assert!(matches!(r, Err(Error::AmbiguousMatching { .. })));
    }

    #[test]
    fn dimension_mismatch() {
        let t = tols();
        let r = logic_leq(&op(&[1.0]), &op(&[1.0, 2.0]), &t);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }
}
