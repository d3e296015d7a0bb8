use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie_core::{InnerProduct, LieAlgebra, ReductiveStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionBackend {
    Koszul,
}

/// Levi-Civita connection of a left-invariant metric, restricted to
/// left-invariant fields.
///
/// `nabla[i]` is the matrix of `v ↦ ∇_{e_i} v`, so `gamma(k, i, j)` is the
/// k-th coordinate of `∇_{e_i} e_j`.
#[derive(Debug, Clone)]
pub struct ConnectionTable {
    nabla: Vec<DMatrix<f64>>,
    pub backend: ConnectionBackend,
}

impl ConnectionTable {
    pub fn dim(&self) -> usize {
        self.nabla.len()
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> f64 {
        self.nabla[i][(k, j)]
    }

    pub fn nabla_basis(&self, i: usize) -> &DMatrix<f64> {
        &self.nabla[i]
    }

    /// Matrix of `v ↦ ∇_a v`.
    pub fn nabla_along(&self, a: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (i, ni) in self.nabla.iter().enumerate() {
            if a[i] != 0.0 {
                m += ni * a[i];
            }
        }
        m
    }

    pub fn covariant(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        self.nabla_along(a) * b
    }

    /// `max |∇_{e_i} e_j − ∇_{e_j} e_i − [e_i, e_j]|`.
    pub fn torsion_residual(&self, alg: &LieAlgebra) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t =
                        self.gamma(k, i, j) - self.gamma(k, j, i) - alg.structure_constant(k, i, j);
                    worst = worst.max(t.abs());
                }
            }
        }
        worst
    }

    /// `max |<∇_{e_i} e_j, e_k> + <e_j, ∇_{e_i} e_k>|`.
    pub fn metric_compatibility_residual(&self, g: &InnerProduct) -> f64 {
        self.nabla
            .iter()
            .map(|ni| {
                let s = ni.transpose() * g.matrix() + g.matrix() * ni;
                s.amax()
            })
            .fold(0.0, f64::max)
    }

    /// `max_i |∇_{e_i} x|`, zero exactly when `x` is parallel.
    pub fn parallel_residual(&self, x: &DVector<f64>) -> f64 {
        self.nabla
            .iter()
            .map(|ni| (ni * x).amax())
            .fold(0.0, f64::max)
    }

    pub(crate) fn from_matrices(nabla: Vec<DMatrix<f64>>) -> Self {
        Self {
            nabla,
            backend: ConnectionBackend::Koszul,
        }
    }
}

/// Koszul formula for left-invariant fields, where all pairings are
/// constant: `2<∇_a b, c> = <[a,b],c> − <[b,c],a> + <[c,a],b>`.
///
/// Only meaningful on the group itself, so a nontrivial isotropy algebra is
/// refused.
pub fn koszul_connection(
    alg: &LieAlgebra,
    g: &InnerProduct,
    red: &ReductiveStructure,
) -> Result<ConnectionTable> {
    if !red.is_trivial() {
        return Err(Error::NonTrivialIsotropy { h_dim: red.h_dim() });
    }
    let n = alg.dim();
    if g.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.dim(),
        });
    }
    let gm = g.matrix();
    let chol = gm.clone().cholesky().ok_or(Error::NotPositiveDefinite {
        min_eigenvalue: 0.0,
    })?;
    // b_ad[i][(c, j)] = <[e_i, e_j], e_c>
    let b_ad: Vec<DMatrix<f64>> = (0..n).map(|i| gm * alg.ad_basis(i)).collect();
    let pairing = |a: usize, b: usize, c: usize| b_ad[a][(c, b)];

    let nabla = (0..n)
        .map(|i| {
            let mut lower = DMatrix::zeros(n, n);
            for j in 0..n {
                for k in 0..n {
                    lower[(k, j)] = 0.5 * (pairing(i, j, k) - pairing(j, k, i) + pairing(k, i, j));
                }
            }
            chol.solve(&lower)
        })
        .collect();
    Ok(ConnectionTable::from_matrices(nabla))
}
