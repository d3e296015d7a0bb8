use nalgebra::{DMatrix, DVector};

use super::ConnectionTable;
use crate::lie_core::{InnerProduct, LieAlgebra};

/// Riemann tensor on left-invariant fields, stored as the operators
/// `R(e_i, e_j)` in the algebra basis.
///
/// Sign convention: `R(U,Y)Z = ∇_U ∇_Y Z − ∇_Y ∇_U Z − ∇_[U,Y] Z`.
#[derive(Debug, Clone)]
pub struct CurvatureTensor {
    dim: usize,
    ops: Vec<DMatrix<f64>>,
}

/// Max-norm residuals of the algebraic curvature identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryResiduals {
    pub antisymmetry: f64,
    pub pairing: f64,
    pub bianchi: f64,
}

impl SymmetryResiduals {
    pub fn max(&self) -> f64 {
        self.antisymmetry.max(self.pairing).max(self.bianchi)
    }
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of `Z ↦ R(e_i, e_j) Z`.
    pub fn operator(&self, i: usize, j: usize) -> &DMatrix<f64> {
        &self.ops[i * self.dim + j]
    }

    /// l-th coordinate of `R(e_i, e_j) e_k`.
    pub fn component(&self, l: usize, i: usize, j: usize, k: usize) -> f64 {
        self.operator(i, j)[(l, k)]
    }

    pub fn apply(&self, u: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>) -> DVector<f64> {
        let n = self.dim;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let c = u[i] * y[j];
                if c != 0.0 {
                    out.gemv(c, self.operator(i, j), z, 1.0);
                }
            }
        }
        out
    }

    /// `<R(U,Y)Y, U>`, the unnormalized sectional pairing.
    pub fn sectional_pairing(&self, u: &DVector<f64>, y: &DVector<f64>, g: &InnerProduct) -> f64 {
        g.pair(&self.apply(u, y, y), u)
    }

    pub fn max_norm(&self) -> f64 {
        self.ops.iter().map(|m| m.amax()).fold(0.0, f64::max)
    }

    pub fn symmetry_residuals(&self, g: &InnerProduct) -> SymmetryResiduals {
        let n = self.dim;
        let mut antisymmetry: f64 = 0.0;
        let mut pairing: f64 = 0.0;
        let mut bianchi: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let rij = self.operator(i, j);
                antisymmetry = antisymmetry.max((rij + self.operator(j, i)).amax());
                // <R e_k, e_l> + <e_k, R e_l>
                pairing = pairing.max((rij.transpose() * g.matrix() + g.matrix() * rij).amax());
                for k in 0..n {
                    for l in 0..n {
                        let b = self.component(l, i, j, k)
                            + self.component(l, j, k, i)
                            + self.component(l, k, i, j);
                        bianchi = bianchi.max(b.abs());
                    }
                }
            }
        }
        SymmetryResiduals {
            antisymmetry,
            pairing,
            bianchi,
        }
    }
}

/// `R(e_i,e_j) = ∇_i ∇_j − ∇_j ∇_i − Σ_m c^m_ij ∇_m`, valid because
/// left-invariant fields are closed under ∇.
pub fn curvature_tensor(conn: &ConnectionTable, alg: &LieAlgebra) -> CurvatureTensor {
    let n = conn.dim();
    let mut ops = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let ni = conn.nabla_basis(i);
            let nj = conn.nabla_basis(j);
            let mut r = ni * nj - nj * ni;
            for m in 0..n {
                let c = alg.structure_constant(m, i, j);
                if c != 0.0 {
                    r -= conn.nabla_basis(m) * c;
                }
            }
            ops.push(r);
        }
    }
    CurvatureTensor { dim: n, ops }
}
