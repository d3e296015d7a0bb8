use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::lie_core::InnerProduct;

/// Below this sine of the angle between `Y` and `U` a pair counts as dependent.
pub const DEGENERACY_SINE: f64 = 1e-10;

/// A flag `(P, Y)`: the plane `P = span{Y, U}` with flagpole `Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Flag {
    pub y: DVector<f64>,
    pub u: DVector<f64>,
    pub orthonormalized: bool,
}

impl Flag {
    /// A raw flag; only linear independence is checked.
    pub fn new(y: DVector<f64>, u: DVector<f64>, g: &InnerProduct) -> Result<Self> {
        if y.len() != g.dim() || u.len() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: y.len().min(u.len()),
            });
        }
        let (yy, uu, yu) = (g.norm_sq(&y), g.norm_sq(&u), g.pair(&y, &u));
        let gram = yy * uu - yu * yu;
        if yy == 0.0 || uu == 0.0 || !(gram > DEGENERACY_SINE * DEGENERACY_SINE * yy * uu) {
            return Err(Error::FlagDegenerate);
        }
        Ok(Self {
            y,
            u,
            orthonormalized: false,
        })
    }

    /// `t_Y = <Y, X>` and `t_U = <U, X>`.
    pub fn drift_pairings(&self, x: &DVector<f64>, g: &InnerProduct) -> (f64, f64) {
        (g.pair(&self.y, x), g.pair(&self.u, x))
    }

    /// Largest deviation from `<Y,Y> = <U,U> = 1`, `<Y,U> = 0`.
    pub fn orthonormality_defect(&self, g: &InnerProduct) -> f64 {
        let a = (g.norm_sq(&self.y) - 1.0).abs();
        let b = (g.norm_sq(&self.u) - 1.0).abs();
        let c = g.pair(&self.y, &self.u).abs();
        a.max(b).max(c)
    }

    /// Returns `self` if already orthonormalized, otherwise the Gram–Schmidt
    /// image.
    pub fn to_orthonormal(&self, g: &InnerProduct) -> Result<Flag> {
        if self.orthonormalized {
            Ok(self.clone())
        } else {
            orthonormalize_flag(&self.y, &self.u, g)
        }
    }
}

/// Gram–Schmidt in the order `(Y, U)` with respect to `g`; the flagpole keeps
/// its direction.
pub fn orthonormalize_flag(y: &DVector<f64>, u: &DVector<f64>, g: &InnerProduct) -> Result<Flag> {
    let raw = Flag::new(y.clone(), u.clone(), g)?;
    let basis = g
        .orthonormalize(&[raw.y, raw.u], DEGENERACY_SINE)
        .map_err(|_| Error::FlagDegenerate)?;
    let mut it = basis.into_iter();
    Ok(Flag {
        y: it.next().expect("two vectors"),
        u: it.next().expect("two vectors"),
        orthonormalized: true,
    })
}
