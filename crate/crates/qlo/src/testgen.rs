//! Independent oracles and structured generators. Everything here is
//! deliberately decoupled from the spectral machinery it is used to test:
//! the diagonal oracle works elementwise on real vectors, and the generators
//! only need a decomposition of their input bound.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, CMatrix};
use crate::operator::HermitianOperator;
use crate::projection::Projection;
use crate::tol::Tolerances;

/// Elementwise logic order on diagonal matrices: a ≼ b iff every entry
/// satisfies aᵢ = 0 or aᵢ = bᵢ (exact comparisons; intended for small
/// integer-valued spectra).
pub fn diagonal_logic_leq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| x == 0.0 || x == y)
}

/// Supremum of two diagonal observables, or None when it does not exist.
/// Defined iff every index has aᵢ = bᵢ, aᵢ = 0 or bᵢ = 0; the value takes
/// the nonzero entry. Verified against brute-force search over the order
/// definition in this module's tests before being trusted as an oracle.
pub fn diagonal_sup_oracle(a: &[f64], b: &[f64]) -> Result<Option<Vec<f64>>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
    }
    let mut c = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b) {
        if x != y && x != 0.0 && y != 0.0 {
            return Ok(None);
        }
        c.push(if x != 0.0 { x } else { y });
    }
    Ok(Some(c))
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    // Box-Muller; two uniforms per component.
    let mut pair = || {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    Complex64::new(pair(), pair())
}

/// Unitary from the QR factorization of a complex Gaussian matrix.
pub(crate) fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    g.qr().q()
}

/// U·diag(spectrum)·U* for a random unitary U. Same seed, same output.
pub fn gen_random_hermitian(
    dim: usize,
    spectrum: &[(f64, usize)],
    seed: u64,
) -> Result<HermitianOperator> {
    let total: usize = spectrum.iter().map(|(_, m)| m).sum();
    if total != dim {
        return Err(Error::BadSpectrum(format!(
            "multiplicities sum to {total}, expected {dim}"
        )));
    }
    let mut diag = Vec::with_capacity(dim);
    for (value, mult) in spectrum {
        diag.extend(std::iter::repeat(*value).take(*mult));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary(dim, &mut rng);
    let d = CMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(diag[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mat = hermitian_part(&(&u * d * u.adjoint()));
    HermitianOperator::new(mat, &Tolerances::default())
}

/// Random sub-projection of an eigenspace given by its orthonormal basis:
/// rotate the basis by a random unitary and keep a random number of columns.
fn random_subprojection_basis(basis: &CMatrix, rng: &mut ChaCha8Rng) -> CMatrix {
    let r = basis.ncols();
    if r == 0 {
        return basis.clone();
    }
    let keep = rng.gen_range(0..=r);
    let w = random_unitary(r, rng);
    (basis * w).columns(0, keep).into_owned()
}

/// Generate (A, B) with A ≼ K and B ≼ K.
///
/// Picks random projections P, Q commuting with K (random sub-projections
/// inside each eigenspace of K, including the null space) and returns
/// A = K·P, B = K·Q. Then C = K(I−P) satisfies AC = K²P(I−P) = 0 and
/// A + C = K, so K is a common upper bound and sup(A, B) must exist.
pub fn gen_pair_under_bound(
    k: &HermitianOperator,
    seed: u64,
    tol: &Tolerances,
) -> Result<(HermitianOperator, HermitianOperator)> {
    let d = k.decompose(tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| -> Result<HermitianOperator> {
        let n = k.dim();
        let mut p = CMatrix::zeros(n, n);
        for (_, proj) in d.points() {
            let sub = random_subprojection_basis(&proj.basis(), rng);
            p += Projection::from_orthonormal_basis(&sub).matrix();
        }
        if d.zero_projection().rank() > 0 {
            let sub = random_subprojection_basis(&d.zero_projection().basis(), rng);
            p += Projection::from_orthonormal_basis(&sub).matrix();
        }
        // P commutes with K, so K·P is Hermitian up to roundoff.
        HermitianOperator::new(hermitian_part(&(k.matrix() * p)), tol)
    };
    let a = pick(&mut rng)?;
    let b = pick(&mut rng)?;
    Ok((a, b))
}
