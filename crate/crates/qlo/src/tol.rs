/// Tolerance bundle threaded through every numerical decision.
///
/// `cluster` and `zero` are relative bases: the effective absolute tolerance
/// for an operator `A` is `base * max(1, ‖A‖)`. The zero threshold decides
/// which eigenvalues count as 0 and therefore fixes the range and null
/// projections of every operator. The logic order is discontinuous at 0, so
/// every downstream order verdict depends on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative eigenvalue clustering tolerance (single-linkage gap).
    pub cluster: f64,
    /// Relative zero threshold: |λ| ≤ zero_for(‖A‖) is treated as eigenvalue 0.
    pub zero: f64,
    /// Orthogonality / range-containment tolerance on projection products.
    pub orth: f64,
    /// Operator equality tolerance: ‖X−Y‖ ≤ eq·max(1, ‖X‖, ‖Y‖).
    pub eq: f64,
    /// Idempotency tolerance for projection validation.
    pub idem: f64,
    /// Base for the rank-revealing threshold: rank_tol = rank_base·√dim.
    pub rank_base: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            cluster: 1e-8,
            zero: 1e-8,
            orth: 1e-8,
            eq: 1e-9,
            idem: 1e-8,
            rank_base: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn cluster_for(&self, norm: f64) -> f64 {
        self.cluster * norm.max(1.0)
    }

    pub fn zero_for(&self, norm: f64) -> f64 {
        self.zero * norm.max(1.0)
    }

    /// Singular values at or below this are rank-deficient directions.
    pub fn rank_tol(&self, dim: usize) -> f64 {
        self.rank_base * (dim as f64).sqrt()
    }

    /// Cross-operator eigenvalue matching tolerance: 2× the coarser
    /// effective clustering tolerance of the two operands.
    pub fn match_tol(&self, norm_a: f64, norm_b: f64) -> f64 {
        2.0 * self.cluster_for(norm_a.max(norm_b))
    }

    /// Equality tolerance scaled by a norm bound.
    pub fn eq_scaled(&self, scale: f64) -> f64 {
        self.eq * scale.max(1.0)
    }
}
