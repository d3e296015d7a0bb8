use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{max_abs, LieAlgebra};
use crate::error::{Error, Result};

/// A positive definite symmetric bilinear form on the algebra, given by its
/// Gram matrix in the algebra basis.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProduct {
    matrix: DMatrix<f64>,
}

impl InnerProduct {
    /// Validates symmetry and positive definiteness at `tol`. The stored
    /// matrix is the exact symmetrization of the input.
    pub fn new(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let n = matrix.nrows();
        let mut worst = (0.0, 0, 0);
        for i in 0..n {
            for j in i + 1..n {
                let r = (matrix[(i, j)] - matrix[(j, i)]).abs();
                if r > worst.0 {
                    worst = (r, i, j);
                }
            }
        }
        if worst.0 > tol || matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotSymmetric {
                residual: worst.0,
                row: worst.1,
                col: worst.2,
            });
        }
        let matrix = (&matrix + matrix.transpose()) * 0.5;
        let min_eigenvalue = min_symmetric_eigenvalue(&matrix);
        if min_eigenvalue <= tol {
            return Err(Error::NotPositiveDefinite { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn scaled_identity(dim: usize, scale: f64) -> Result<Self> {
        Self::new(DMatrix::identity(dim, dim) * scale, 0.0)
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(
            DMatrix::from_diagonal(&DVector::from_column_slice(entries)),
            0.0,
        )
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn pair(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        a.dot(&(&self.matrix * b))
    }

    pub fn norm_sq(&self, a: &DVector<f64>) -> f64 {
        self.pair(a, a)
    }

    pub fn norm(&self, a: &DVector<f64>) -> f64 {
        self.norm_sq(a).max(0.0).sqrt()
    }

    /// Gram–Schmidt (two passes per vector). Returns the index of the first
    /// vector whose residual falls below `rel_tol` times its own norm.
    pub fn orthonormalize(
        &self,
        vectors: &[DVector<f64>],
        rel_tol: f64,
    ) -> std::result::Result<Vec<DVector<f64>>, usize> {
        let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
        for (idx, v) in vectors.iter().enumerate() {
            let scale = self.norm(v);
            let mut w = v.clone();
            for _ in 0..2 {
                for q in &out {
                    let p = self.pair(q, &w);
                    w.axpy(-p, q, 1.0);
                }
            }
            let n = self.norm(&w);
            if scale == 0.0 || n <= rel_tol * scale {
                return Err(idx);
            }
            out.push(w / n);
        }
        Ok(out)
    }
}

pub(crate) fn min_symmetric_eigenvalue(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m.clone()).eigenvalues.min()
}

/// Outcome of the ad-skewness test `<[z,x],y> + <x,[z,y]> = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiInvarianceReport {
    pub bi_invariant: bool,
    pub worst_residual: f64,
    /// `(z, x, y)` basis indices of the worst residual.
    pub worst_triple: [usize; 3],
}

/// Algebra-level bi-invariance: every `ad(e_z)` must be skew for `ip`.
pub fn check_bi_invariance(ip: &InnerProduct, alg: &LieAlgebra, tol: f64) -> BiInvarianceReport {
    let g = ip.matrix();
    let mut report = BiInvarianceReport {
        bi_invariant: true,
        worst_residual: 0.0,
        worst_triple: [0, 0, 0],
    };
    for z in 0..alg.dim() {
        let ad = alg.ad_basis(z);
        // (x, y) entry is <[z,x],y> + <x,[z,y]>
        let s = ad.transpose() * g + g * ad;
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                let r = s[(x, y)].abs();
                if r > report.worst_residual {
                    report.worst_residual = r;
                    report.worst_triple = [z, x, y];
                }
            }
        }
    }
    report.bi_invariant = report.worst_residual <= tol;
    report
}

/// Reference inner product, working inner product, and the endomorphism
/// `phi` relating them through `<u,v> = <phi u, v>_0`.
#[derive(Debug, Clone)]
pub struct MetricPack {
    pub g0: InnerProduct,
    pub g: InnerProduct,
    pub phi: DMatrix<f64>,
    pub phi_inv: DMatrix<f64>,
    pub g0_bi_invariant: bool,
    pub bi_invariance: BiInvarianceReport,
    /// Max over basis pairs of `|<phi e_i, e_j>_0 - <e_i, e_j>|`.
    pub phi_residual: f64,
}

impl MetricPack {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn apply_phi(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.phi * v
    }

    pub fn apply_phi_inv(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.phi_inv * v
    }
}

/// Solves `G0 phi = G` and checks that `phi` is g0-self-adjoint and
/// positive definite.
pub fn phi_from_metrics(
    g0: &InnerProduct,
    g: &InnerProduct,
    alg: &LieAlgebra,
    tol: f64,
) -> Result<MetricPack> {
    let n = alg.dim();
    for ip in [g0, g] {
        if ip.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: ip.dim(),
            });
        }
    }
    let chol = g0
        .matrix()
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite {
            min_eigenvalue: 0.0,
        })?;
    let phi = chol.solve(g.matrix());
    let phi_inv = g
        .matrix()
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite {
            min_eigenvalue: 0.0,
        })?
        .solve(g0.matrix());

    // <phi e_i, e_j>_0 = (G0 phi)_{j i}
    let pairing = g0.matrix() * &phi;
    let phi_residual = max_abs((pairing.transpose() - g.matrix()).as_slice());
    let self_adj = max_abs((&pairing - pairing.transpose()).as_slice());
    if self_adj > tol.max(1e-12) * (1.0 + g.matrix().amax()) {
        return Err(Error::NotSymmetric {
            residual: self_adj,
            row: 0,
            col: 0,
        });
    }
    // Eigenvalues of phi are the generalized eigenvalues of (G, G0):
    // those of L^{-1} G L^{-T}.
    let l = chol.l();
    let l_inv = l.clone().try_inverse().ok_or(Error::NotPositiveDefinite {
        min_eigenvalue: 0.0,
    })?;
    let sym = &l_inv * g.matrix() * l_inv.transpose();
    let min_eigenvalue = min_symmetric_eigenvalue(&((&sym + sym.transpose()) * 0.5));
    if min_eigenvalue <= tol {
        return Err(Error::NotPositiveDefinite { min_eigenvalue });
    }
    let bi_invariance = check_bi_invariance(g0, alg, tol);
    Ok(MetricPack {
        g0: g0.clone(),
        g: g.clone(),
        phi,
        phi_inv,
        g0_bi_invariant: bi_invariance.bi_invariant,
        bi_invariance,
        phi_residual,
    })
}
