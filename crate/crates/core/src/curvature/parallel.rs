use nalgebra::{DMatrix, DVector, SVD};

use super::ConnectionTable;
use crate::lie_core::InnerProduct;

/// Singular values below this fraction of the largest count as zero.
pub const NULLSPACE_REL_CUTOFF: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct ParallelFields {
    /// g-orthonormal basis of `{X : ∇_{e_i} X = 0 for all i}`.
    pub basis: Vec<DVector<f64>>,
    pub singular_values: Vec<f64>,
}

impl ParallelFields {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Component of `x` outside the parallel span, in g-norm.
    pub fn distance(&self, x: &DVector<f64>, g: &InnerProduct) -> f64 {
        let mut r = x.clone();
        for b in &self.basis {
            let p = g.pair(b, x);
            r.axpy(-p, b, 1.0);
        }
        g.norm(&r)
    }
}

/// Kernel of the stacked map `X ↦ (∇_{e_1} X, …, ∇_{e_n} X)`.
pub fn parallel_fields(conn: &ConnectionTable, g: &InnerProduct) -> ParallelFields {
    let n = conn.dim();
    let mut stacked = DMatrix::zeros(n * n, n);
    for i in 0..n {
        stacked
            .view_mut((i * n, 0), (n, n))
            .copy_from(conn.nabla_basis(i));
    }
    let svd = SVD::new(stacked, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    let cutoff = NULLSPACE_REL_CUTOFF * largest;

    let kernel: Vec<DVector<f64>> = sv
        .iter()
        .enumerate()
        .filter(|(_, &s)| largest == 0.0 || s <= cutoff)
        .map(|(r, _)| v_t.row(r).transpose())
        .collect();
    // Euclidean-orthonormal rows are independent, so this cannot fail.
    let basis = g.orthonormalize(&kernel, 1e-12).unwrap_or_default();
    let mut singular_values = sv;
    singular_values.sort_by(|a, b| b.total_cmp(a));
    ParallelFields {
        basis,
        singular_values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::koszul_connection;
    use crate::lie_core::{
        BracketEntry, LieAlgebra, ReductiveStructure, DEFAULT_STRUCTURAL_TOL as TOL,
    };

    fn fields(alg: &LieAlgebra, g: &InnerProduct) -> ParallelFields {
        let conn = koszul_connection(alg, g, &ReductiveStructure::trivial(alg.dim())).unwrap();
        let pf = parallel_fields(&conn, g);
        for b in &pf.basis {
            assert!(conn.parallel_residual(b) <= 1e-10);
        }
        pf
    }

    #[test]
    fn e2_parallel_is_z() {
        let alg = LieAlgebra::new(
            3,
            &[
                BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
            ],
            TOL,
        )
        .unwrap();
        let lambda = 2.0;
        let g = InnerProduct::scaled_identity(3, lambda * lambda).unwrap();
        let pf = fields(&alg, &g);
        assert_eq!(pf.dim(), 1);
        let b = &pf.basis[0];
        assert!(b[0].abs() < 1e-12 && b[1].abs() < 1e-12);
        assert!((b[2].abs() - 1.0 / lambda).abs() < 1e-12);
    }

    #[test]
    fn alpha_family_parallel_is_y_minus_z() {
        let alg = LieAlgebra::new(
            3,
            &[
                BracketEntry::new(0, 1, [0.0, 1.0, 1.0]),
                BracketEntry::new(1, 2, [2.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, -1.0]),
            ],
            TOL,
        )
        .unwrap();
        let pf = fields(&alg, &InnerProduct::identity(3));
        assert_eq!(pf.dim(), 1);
        let b = &pf.basis[0] * pf.basis[0][1].signum();
        let expected = DVector::from_column_slice(&[0.0, 1.0, -1.0]) / 2f64.sqrt();
        assert!((b - expected).amax() < 1e-12);
    }

    #[test]
    fn su2_has_none() {
        let alg = LieAlgebra::new(
            3,
            &[
                BracketEntry::new(0, 1, [0.0, 0.0, 1.0]),
                BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
            ],
            TOL,
        )
        .unwrap();
        assert_eq!(fields(&alg, &InnerProduct::identity(3)).dim(), 0);
    }

    #[test]
    fn abelian_everything_parallel() {
        let g = InnerProduct::diagonal(&[4.0, 1.0]).unwrap();
        let pf = fields(&LieAlgebra::abelian(2).unwrap(), &g);
        assert_eq!(pf.dim(), 2);
        assert!((g.pair(&pf.basis[0], &pf.basis[1])).abs() < 1e-14);
        assert!((g.norm(&pf.basis[0]) - 1.0).abs() < 1e-14);
    }
}
