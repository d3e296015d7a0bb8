use nalgebra::{DMatrix, DVector};

use super::{max_abs, MAX_DIM};
use crate::error::{Error, Result};

/// One basis bracket `[e_i, e_j] = Σ_k coeffs[k] e_k`, with 0-based `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<f64>,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, coeffs: impl Into<Vec<f64>>) -> Self {
        Self {
            i,
            j,
            coeffs: coeffs.into(),
        }
    }
}

/// Worst Jacobiator over basis triples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiReport {
    pub residual: f64,
    pub triple: [usize; 3],
}

/// A finite-dimensional real Lie algebra in a fixed basis.
///
/// Structure constants are stored dense: `c(k, i, j)` is the k-th coordinate
/// of `[e_i, e_j]`. Antisymmetry holds exactly because only the upper
/// triangle is ever supplied; the lower one is its negation.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<f64>,
    ad: Vec<DMatrix<f64>>,
    basis_names: Vec<String>,
    jacobi: JacobiReport,
}

impl LieAlgebra {
    /// Builds and validates an algebra from its nonzero basis brackets.
    pub fn new(dim: usize, brackets: &[BracketEntry], tol: f64) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        let mut c = vec![0.0; dim * dim * dim];
        let mut seen = vec![false; dim * dim];
        for b in brackets {
            if b.i >= b.j || b.j >= dim {
                return Err(Error::InvalidBracket {
                    i: b.i,
                    j: b.j,
                    reason: format!("indices must satisfy i < j < {dim}"),
                });
            }
            if b.coeffs.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: b.coeffs.len(),
                });
            }
            if b.coeffs.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidBracket {
                    i: b.i,
                    j: b.j,
                    reason: "non-finite coefficient".into(),
                });
            }
            if std::mem::replace(&mut seen[b.i * dim + b.j], true) {
                return Err(Error::InvalidBracket {
                    i: b.i,
                    j: b.j,
                    reason: "bracket given twice".into(),
                });
            }
            for (k, &v) in b.coeffs.iter().enumerate() {
                c[(k * dim + b.i) * dim + b.j] = v;
                c[(k * dim + b.j) * dim + b.i] = -v;
            }
        }
        let alg = Self::from_dense(dim, c);
        if alg.jacobi.residual > tol {
            return Err(Error::JacobiViolation {
                residual: alg.jacobi.residual,
                triple: alg.jacobi.triple,
            });
        }
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(dim, &[], 0.0)
    }

    fn from_dense(dim: usize, c: Vec<f64>) -> Self {
        let ad = (0..dim)
            .map(|i| DMatrix::from_fn(dim, dim, |k, j| c[(k * dim + i) * dim + j]))
            .collect();
        let mut alg = Self {
            dim,
            c,
            ad,
            basis_names: (1..=dim).map(|i| format!("e{i}")).collect(),
            jacobi: JacobiReport {
                residual: 0.0,
                triple: [0, 0, 0],
            },
        };
        alg.jacobi = alg.compute_jacobi();
        alg
    }

    /// Replaces the default `e1..en` labels.
    pub fn with_names<S: Into<String>>(
        mut self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.basis_names = names;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_vector(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    /// k-th coordinate of `[e_i, e_j]`.
    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[(k * self.dim + i) * self.dim + j]
    }

    /// Matrix of `ad(e_i)`.
    pub fn ad_basis(&self, i: usize) -> &DMatrix<f64> {
        &self.ad[i]
    }

    /// Matrix of `ad(a) = [a, ·]`.
    pub fn ad(&self, a: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, ad_i) in self.ad.iter().enumerate() {
            if a[i] != 0.0 {
                m += ad_i * a[i];
            }
        }
        m
    }

    pub fn bracket(&self, a: &DVector<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.br(a, b))
    }

    /// Unchecked bracket for internal use on vectors already known to fit.
    pub(crate) fn br(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        let n = self.dim;
        DVector::from_fn(n, |k, _| {
            let mut s = 0.0;
            for i in 0..n {
                if a[i] == 0.0 {
                    continue;
                }
                let row = &self.c[(k * n + i) * n..(k * n + i + 1) * n];
                let inner: f64 = row.iter().zip(b.iter()).map(|(c, y)| c * y).sum();
                s += a[i] * inner;
            }
            s
        })
    }

    pub(crate) fn check_len(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn jacobi(&self) -> JacobiReport {
        self.jacobi
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|&v| v == 0.0)
    }

    // The Jacobiator is totally antisymmetric, so distinct increasing triples
    // cover every case.
    fn compute_jacobi(&self) -> JacobiReport {
        let mut worst = JacobiReport {
            residual: 0.0,
            triple: [0, 0, 0],
        };
        let n = self.dim;
        // [v, e_k] = Σ_m v_m [e_m, e_k]
        let bracket_with_basis = |v: &[f64], k: usize, out: &mut [f64]| {
            for (m, &vm) in v.iter().enumerate() {
                if vm != 0.0 {
                    for (l, o) in out.iter_mut().enumerate() {
                        *o += vm * self.c[(l * n + m) * n + k];
                    }
                }
            }
        };
        let basis_bracket = |i: usize, j: usize| -> Vec<f64> {
            (0..n).map(|l| self.c[(l * n + i) * n + j]).collect()
        };
        let mut jac = vec![0.0; n];
        for i in 0..n {
            for j in i + 1..n {
                let xy = basis_bracket(i, j);
                for k in j + 1..n {
                    jac.iter_mut().for_each(|v| *v = 0.0);
                    bracket_with_basis(&xy, k, &mut jac);
                    bracket_with_basis(&basis_bracket(j, k), i, &mut jac);
                    bracket_with_basis(&basis_bracket(k, i), j, &mut jac);
                    let r = max_abs(&jac);
                    if r > worst.residual {
                        worst = JacobiReport {
                            residual: r,
                            triple: [i, j, k],
                        };
                    }
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::DEFAULT_STRUCTURAL_TOL;

    fn e2() -> LieAlgebra {
        // basis (x, y, z): [y,z] = x, [z,x] = y
        LieAlgebra::new(
            3,
            &[
                BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
            ],
            DEFAULT_STRUCTURAL_TOL,
        )
        .unwrap()
    }

    fn su2() -> LieAlgebra {
        LieAlgebra::new(
            3,
            &[
                BracketEntry::new(0, 1, [0.0, 0.0, 1.0]),
                BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
            ],
            DEFAULT_STRUCTURAL_TOL,
        )
        .unwrap()
    }

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    #[test]
    fn e2_brackets() {
        let alg = e2();
        assert_eq!(
            alg.bracket(&v(&[0., 1., 0.]), &v(&[0., 0., 1.])).unwrap(),
            v(&[1., 0., 0.])
        );
        assert_eq!(
            alg.bracket(&v(&[0., 0., 1.]), &v(&[1., 0., 0.])).unwrap(),
            v(&[0., 1., 0.])
        );
        assert_eq!(
            alg.bracket(&v(&[1., 0., 0.]), &v(&[0., 1., 0.])).unwrap(),
            v(&[0., 0., 0.])
        );
        assert_eq!(alg.jacobi().residual, 0.0);
    }

    #[test]
    fn alpha_family_is_valid() {
        let a = 1.0;
        let alg = LieAlgebra::new(
            3,
            &[
                BracketEntry::new(0, 1, [0.0, a, a]),
                BracketEntry::new(1, 2, [2.0 * a, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -a, -a]),
            ],
            DEFAULT_STRUCTURAL_TOL,
        )
        .unwrap();
        assert!(alg.jacobi().residual <= 1e-12);
    }

    #[test]
    fn abelian_is_valid() {
        let alg = LieAlgebra::abelian(3).unwrap();
        assert!(alg.is_abelian());
        assert_eq!(
            alg.bracket(&v(&[1., 2., 3.]), &v(&[-1., 0., 5.])).unwrap(),
            v(&[0., 0., 0.])
        );
    }

    #[test]
    fn self_bracket_vanishes() {
        let alg = su2();
        let a = v(&[0.3, -1.2, 2.5]);
        assert_eq!(alg.bracket(&a, &a).unwrap().amax(), 0.0);
    }

    #[test]
    fn su2_bracket_by_linearity() {
        // [e1 + e2, e3] = [e1, e3] + [e2, e3] = -e2 + e1
        let alg = su2();
        let r = alg.bracket(&v(&[1., 1., 0.]), &v(&[0., 0., 1.])).unwrap();
        assert_eq!(r, v(&[1., -1., 0.]));
    }

    #[test]
    fn jacobi_violation_names_triple() {
        // [e1,e2] = e1, [e1,e3] = e2: the Jacobiator of (e1,e2,e3) is e2.
        let err = LieAlgebra::new(
            3,
            &[
                BracketEntry::new(0, 1, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, 1.0, 0.0]),
            ],
            DEFAULT_STRUCTURAL_TOL,
        )
        .unwrap_err();
        match err {
            Error::JacobiViolation { residual, triple } => {
                assert!(residual > 0.5);
                assert_eq!(triple, [0, 1, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_entries() {
        assert!(matches!(
            LieAlgebra::new(3, &[BracketEntry::new(0, 1, [1.0, 0.0])], 1e-9),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
        assert!(matches!(
            LieAlgebra::new(3, &[BracketEntry::new(1, 1, [0.0; 3])], 1e-9),
            Err(Error::InvalidBracket { .. })
        ));
        assert!(matches!(
            LieAlgebra::new(3, &[BracketEntry::new(2, 1, [0.0; 3])], 1e-9),
            Err(Error::InvalidBracket { .. })
        ));
        assert!(matches!(
            LieAlgebra::new(
                2,
                &[
                    BracketEntry::new(0, 1, [0.0; 2]),
                    BracketEntry::new(0, 1, [0.0; 2])
                ],
                1e-9
            ),
            Err(Error::InvalidBracket { .. })
        ));
        assert!(matches!(
            LieAlgebra::new(0, &[], 1e-9),
            Err(Error::InvalidDimension(0))
        ));
        assert!(matches!(
            LieAlgebra::new(33, &[], 1e-9),
            Err(Error::InvalidDimension(33))
        ));
        assert!(matches!(
            su2().bracket(&v(&[1., 0.]), &v(&[1., 0., 0.])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ad_matches_bracket() {
        let alg = su2();
        let a = v(&[0.2, -0.7, 1.1]);
        let b = v(&[1.5, 0.4, -0.3]);
        let diff = alg.ad(&a) * &b - alg.br(&a, &b);
        assert!(diff.amax() < 1e-15);
    }
}
