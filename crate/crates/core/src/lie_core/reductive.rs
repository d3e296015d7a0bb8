use nalgebra::{DMatrix, DVector};

use super::{InnerProduct, LieAlgebra};
use crate::error::{Error, Result};

/// Splitting `g = h ⊕ m` with `m` the g0-orthogonal complement of the
/// isotropy subalgebra `h`.
///
/// Ad(H)-invariance of the complement and of the extended metric cannot be
/// checked from algebra data alone; it is taken as given by the caller.
#[derive(Debug, Clone)]
pub struct ReductiveStructure {
    dim: usize,
    /// g0-orthonormal basis of h.
    pub h_basis: Vec<DVector<f64>>,
    /// Basis of m: the coordinate basis when h = 0, otherwise g0-orthonormal.
    pub m_basis: Vec<DVector<f64>>,
    pub p_h: DMatrix<f64>,
    pub p_m: DMatrix<f64>,
    /// Max-norm of the m-component of `[h_i, h_j]`.
    pub closure_residual: f64,
}

impl ReductiveStructure {
    /// The Lie-group case `H = {e}`.
    pub fn trivial(dim: usize) -> Self {
        Self {
            dim,
            h_basis: Vec::new(),
            m_basis: (0..dim)
                .map(|i| {
                    let mut v = DVector::zeros(dim);
                    v[i] = 1.0;
                    v
                })
                .collect(),
            p_h: DMatrix::zeros(dim, dim),
            p_m: DMatrix::identity(dim, dim),
            closure_residual: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        self.h_basis.is_empty()
    }

    pub fn h_dim(&self) -> usize {
        self.h_basis.len()
    }

    pub fn m_dim(&self) -> usize {
        self.dim - self.h_basis.len()
    }

    pub fn project_m(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.p_m * v
    }

    pub fn project_h(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.p_h * v
    }

    /// Max-norm of the h-component of `v`.
    pub fn h_residual(&self, v: &DVector<f64>) -> f64 {
        if self.is_trivial() {
            0.0
        } else {
            self.project_h(v).amax()
        }
    }

    pub fn ad_h_invariance(&self) -> &'static str {
        if self.is_trivial() {
            "not applicable"
        } else {
            "assumed"
        }
    }

    /// Extends an inner product given on `m` to all of `g` by using `g0` on
    /// `h` and declaring `h ⟂ m`. Entries of `g` touching `h` are ignored.
    pub fn extend_metric(
        &self,
        g: &InnerProduct,
        g0: &InnerProduct,
        tol: f64,
    ) -> Result<InnerProduct> {
        if self.is_trivial() {
            return Ok(g.clone());
        }
        let m = self.p_m.transpose() * g.matrix() * &self.p_m
            + self.p_h.transpose() * g0.matrix() * &self.p_h;
        InnerProduct::new(m, tol)
    }
}

/// Builds the reductive decomposition for the subalgebra spanned by
/// `h_vectors`.
pub fn reductive_split(
    h_vectors: &[DVector<f64>],
    g0: &InnerProduct,
    alg: &LieAlgebra,
    tol: f64,
) -> Result<ReductiveStructure> {
    let n = alg.dim();
    if g0.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g0.dim(),
        });
    }
    for v in h_vectors {
        alg.check_len(v)?;
    }
    if h_vectors.is_empty() {
        return Ok(ReductiveStructure::trivial(n));
    }
    let h_basis = g0
        .orthonormalize(h_vectors, tol.max(1e-12))
        .map_err(|index| Error::DependentGenerators { index })?;

    let mut p_h = DMatrix::zeros(n, n);
    for h in &h_basis {
        // v ↦ <h, v>_0 h
        p_h += h * (g0.matrix() * h).transpose();
    }
    let p_m = DMatrix::identity(n, n) - &p_h;

    let mut closure_residual: f64 = 0.0;
    for (i, hi) in h_basis.iter().enumerate() {
        for (j, hj) in h_basis.iter().enumerate().skip(i + 1) {
            let r = (&p_m * alg.br(hi, hj)).amax();
            if r > tol {
                return Err(Error::NotASubalgebra { residual: r, i, j });
            }
            closure_residual = closure_residual.max(r);
        }
    }

    // Orthonormalize projected coordinate vectors, skipping those that
    // collapse into the span already found.
    let mut m_basis: Vec<DVector<f64>> = Vec::with_capacity(n - h_basis.len());
    for k in 0..n {
        if m_basis.len() == n - h_basis.len() {
            break;
        }
        let mut w = p_m.column(k).into_owned();
        for _ in 0..2 {
            for q in &m_basis {
                let p = g0.pair(q, &w);
                w.axpy(-p, q, 1.0);
            }
        }
        let norm = g0.norm(&w);
        if norm > 1e-8 {
            m_basis.push(w / norm);
        }
    }
    debug_assert_eq!(m_basis.len(), n - h_basis.len());

    Ok(ReductiveStructure {
        dim: n,
        h_basis,
        m_basis,
        p_h,
        p_m,
        closure_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{BracketEntry, DEFAULT_STRUCTURAL_TOL as TOL};

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    fn su2() -> LieAlgebra {
        LieAlgebra::new(
            3,
            &[
                BracketEntry::new(0, 1, [0.0, 0.0, 1.0]),
                BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
            ],
            TOL,
        )
        .unwrap()
    }

    #[test]
    fn empty_h_is_group_case() {
        let red = reductive_split(&[], &InnerProduct::identity(3), &su2(), TOL).unwrap();
        assert!(red.is_trivial());
        assert_eq!(red.p_m, DMatrix::<f64>::identity(3, 3));
        assert_eq!(red.m_basis.len(), 3);
        assert_eq!(red.ad_h_invariance(), "not applicable");
    }

    #[test]
    fn su2_over_circle() {
        let red =
            reductive_split(&[v(&[0., 0., 2.])], &InnerProduct::identity(3), &su2(), TOL).unwrap();
        assert_eq!(red.m_dim(), 2);
        for m in &red.m_basis {
            assert!(m[2].abs() < 1e-15);
        }
        // span{e1, e2}
        let proj = red.project_m(&v(&[0.3, -0.2, 5.0]));
        assert!((proj - v(&[0.3, -0.2, 0.0])).amax() < 1e-15);
        assert_eq!(red.ad_h_invariance(), "assumed");
    }

    #[test]
    fn e2_span_x_is_a_subalgebra() {
        let alg = LieAlgebra::new(
            3,
            &[
                BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
            ],
            TOL,
        )
        .unwrap();
        let red =
            reductive_split(&[v(&[1., 0., 0.])], &InnerProduct::identity(3), &alg, TOL).unwrap();
        assert_eq!(red.m_basis.len(), 2);
        assert!(red.m_basis.iter().all(|m| m[0].abs() < 1e-15));
    }

    #[test]
    fn non_subalgebra_rejected() {
        let r = reductive_split(
            &[v(&[1., 0., 0.]), v(&[0., 1., 0.])],
            &InnerProduct::identity(3),
            &su2(),
            TOL,
        );
        assert!(matches!(r, Err(Error::NotASubalgebra { i: 0, j: 1, .. })));
    }

    #[test]
    fn dependent_generators_rejected() {
        let r = reductive_split(
            &[v(&[0., 0., 1.]), v(&[0., 0., -3.])],
            &InnerProduct::identity(3),
            &su2(),
            TOL,
        );
        assert!(matches!(r, Err(Error::DependentGenerators { index: 1 })));
    }

    #[test]
    fn complement_is_g0_orthogonal() {
        let alg = LieAlgebra::abelian(4).unwrap();
        let g0 = InnerProduct::new(
            DMatrix::from_row_slice(
                4,
                4,
                &[
                    2.0, 0.3, 0.0, 0.1, 0.3, 1.5, 0.2, 0.0, 0.0, 0.2, 1.0, 0.4, 0.1, 0.0, 0.4, 3.0,
                ],
            ),
            TOL,
        )
        .unwrap();
        let h = [v(&[1., 1., 0., 0.]), v(&[0., 0., 1., -1.])];
        let red = reductive_split(&h, &g0, &alg, TOL).unwrap();
        let id = DMatrix::<f64>::identity(4, 4);
        assert!((&red.p_h + &red.p_m - &id).amax() < 1e-14);
        assert!((&red.p_h * &red.p_m).amax() < 1e-14);
        assert!((&red.p_m * &red.p_m - &red.p_m).amax() < 1e-14);
        for m in &red.m_basis {
            for hv in &h {
                assert!(g0.pair(m, hv).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn extended_metric_blocks() {
        let alg = su2();
        let g0 = InnerProduct::identity(3);
        let red = reductive_split(&[v(&[0., 0., 1.])], &g0, &alg, TOL).unwrap();
        let g = InnerProduct::new(
            DMatrix::from_row_slice(3, 3, &[2.0, 0.1, 0.5, 0.1, 3.0, 0.5, 0.5, 0.5, 7.0]),
            TOL,
        )
        .unwrap();
        let ext = red.extend_metric(&g, &g0, TOL).unwrap();
        let expected =
            DMatrix::from_row_slice(3, 3, &[2.0, 0.1, 0.0, 0.1, 3.0, 0.0, 0.0, 0.0, 1.0]);
        assert!((ext.matrix() - expected).amax() < 1e-15);
    }
}
