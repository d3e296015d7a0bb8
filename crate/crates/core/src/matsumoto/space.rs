use nalgebra::DVector;

use crate::curvature::{
    curvature_tensor, koszul_connection, parallel_fields, ConnectionTable, CurvatureTensor,
    ParallelFields,
};
use crate::error::{Error, Result};
use crate::lie_core::{
    phi_from_metrics, reductive_split, InnerProduct, LieAlgebra, MetricPack, ReductiveStructure,
};

/// An invariant Matsumoto metric `F = α²/(α − β)`: an invariant Riemannian
/// metric `g` together with an invariant drift `X`, where `β(y) = <X, y>`.
///
/// All vectors live in the tangent space at the origin, i.e. in `m`.
#[derive(Debug, Clone)]
pub struct MatsumotoSpace {
    pub name: String,
    pub alg: LieAlgebra,
    pub pack: MetricPack,
    pub red: ReductiveStructure,
    pub drift: DVector<f64>,
    /// `sqrt<X,X>`.
    pub x_norm: f64,
    pub admissible: bool,
    pub tol: f64,
}

impl MatsumotoSpace {
    pub fn new(
        name: impl Into<String>,
        alg: LieAlgebra,
        pack: MetricPack,
        red: ReductiveStructure,
        drift: DVector<f64>,
        tol: f64,
    ) -> Result<Self> {
        alg.check_len(&drift)?;
        if pack.dim() != alg.dim() || red.dim() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: pack.dim(),
            });
        }
        let residual = red.h_residual(&drift);
        if residual > tol {
            return Err(Error::VectorNotInM {
                name: "X",
                residual,
            });
        }
        let x_norm = pack.g.norm(&drift);
        Ok(Self {
            name: name.into(),
            alg,
            pack,
            red,
            drift,
            x_norm,
            admissible: x_norm < 0.5,
            tol,
        })
    }

    /// Assembles a space from raw data: splits off `h`, extends `g` from `m`
    /// by `g0` on `h` (with `h ⟂ m`), and derives `φ`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: impl Into<String>,
        alg: LieAlgebra,
        g0: &InnerProduct,
        g: &InnerProduct,
        h_vectors: &[DVector<f64>],
        drift: DVector<f64>,
        tol: f64,
    ) -> Result<Self> {
        let red = reductive_split(h_vectors, g0, &alg, tol)?;
        let g = red.extend_metric(g, g0, tol)?;
        let pack = phi_from_metrics(g0, &g, &alg, tol)?;
        Self::new(name, alg, pack, red, drift, tol)
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn g(&self) -> &InnerProduct {
        &self.pack.g
    }

    pub fn alpha(&self, y: &DVector<f64>) -> f64 {
        self.pack.g.norm(y)
    }

    pub fn beta(&self, y: &DVector<f64>) -> f64 {
        self.pack.g.pair(&self.drift, y)
    }

    /// Connection, curvature and parallel fields of `g` via the Koszul
    /// route; only available when the isotropy is trivial.
    pub fn riemannian(&self) -> Result<RiemannianData> {
        let conn = koszul_connection(&self.alg, &self.pack.g, &self.red)?;
        let curvature = curvature_tensor(&conn, &self.alg);
        let parallel = parallel_fields(&conn, &self.pack.g);
        let drift_parallel_residual = conn.parallel_residual(&self.drift);
        Ok(RiemannianData {
            conn,
            curvature,
            parallel,
            drift_parallel_residual,
        })
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        if self.admissible {
            Ok(())
        } else {
            Err(Error::Inadmissible { norm: self.x_norm })
        }
    }
}

#[derive(Debug, Clone)]
pub struct RiemannianData {
    pub conn: ConnectionTable,
    pub curvature: CurvatureTensor,
    pub parallel: ParallelFields,
    pub drift_parallel_residual: f64,
}

impl RiemannianData {
    pub fn drift_is_parallel(&self, space: &MatsumotoSpace) -> bool {
        self.drift_parallel_residual <= space.tol * (1.0 + space.drift.amax())
    }
}

/// Admissibility of a drift together with the coefficient bound along its
/// direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    /// `sqrt<X,X>`.
    pub norm: f64,
    /// Writing `X = u·d` with `d` scaled so its largest coordinate is ±1,
    /// the drift is admissible iff `|u| < 1/(2 |d|)`. `None` for `X = 0`.
    pub coefficient: Option<f64>,
    pub coefficient_bound: Option<f64>,
}

/// `sqrt<X,X> < 1/2`, strictly.
pub fn admissible(x: &DVector<f64>, g: &InnerProduct) -> Admissibility {
    let norm = g.norm(x);
    let (coefficient, coefficient_bound) = match leading_coordinate(x) {
        Some(u) => (Some(u), Some(coefficient_bound(&(x / u), g))),
        None => (None, None),
    };
    Admissibility {
        admissible: norm < 0.5,
        norm,
        coefficient,
        coefficient_bound,
    }
}

/// Largest `|u|` for which `u·direction` is admissible (exclusive).
pub fn coefficient_bound(direction: &DVector<f64>, g: &InnerProduct) -> f64 {
    0.5 / g.norm(direction)
}

/// First coordinate of largest magnitude, `None` for the zero vector.
fn leading_coordinate(v: &DVector<f64>) -> Option<f64> {
    let mut best = 0.0f64;
    for &c in v.iter() {
        if c.abs() > best.abs() {
            best = c;
        }
    }
    (best != 0.0).then_some(best)
}

/// Normalizes a direction so its largest-magnitude coordinate is +1; ties go
/// to the first such coordinate.
pub fn unit_max_coordinate(v: &DVector<f64>) -> DVector<f64> {
    match leading_coordinate(v) {
        Some(m) => v / m,
        None => v.clone(),
    }
}

/// `F(y) = α(y)² / (α(y) − <X, y>)`.
pub fn finsler_norm(y: &DVector<f64>, space: &MatsumotoSpace) -> Result<f64> {
    space.alg.check_len(y)?;
    space.require_admissible()?;
    let a = space.alpha(y);
    if a == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(a * a / (a - space.beta(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{BracketEntry, DEFAULT_STRUCTURAL_TOL as TOL};

    fn e2_space(lambda: f64, u: f64) -> MatsumotoSpace {
        let alg = LieAlgebra::new(
            3,
            &[
                BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
            ],
            TOL,
        )
        .unwrap();
        let g = InnerProduct::scaled_identity(3, lambda * lambda).unwrap();
        MatsumotoSpace::from_parts(
            "e2",
            alg,
            &g,
            &g,
            &[],
            DVector::from_column_slice(&[0.0, 0.0, u]),
            TOL,
        )
        .unwrap()
    }

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    #[test]
    fn leading_coordinate_ties_go_first() {
        let d = DVector::from_column_slice(&[0.0, 0.2, -0.2]);
        assert_eq!(unit_max_coordinate(&d).as_slice(), &[0.0, 1.0, -1.0]);
        let adm = admissible(&d, &InnerProduct::identity(3));
        assert_eq!(adm.coefficient, Some(0.2));
        assert!((adm.coefficient_bound.unwrap() - 0.5 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            admissible(&DVector::zeros(3), &InnerProduct::identity(3)).coefficient,
            None
        );
    }

    #[test]
    fn f_values() {
        let s = e2_space(1.0, 0.3);
        assert!((finsler_norm(&v(&[0., 0., 1.]), &s).unwrap() - 10.0 / 7.0).abs() < 1e-15);
        assert!((finsler_norm(&v(&[0., 0., 2.]), &s).unwrap() - 20.0 / 7.0).abs() < 1e-14);
        let s0 = e2_space(1.0, 0.0);
        let y = v(&[0.6, 0.0, 0.8]);
        assert!((finsler_norm(&y, &s0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn f_errors() {
        let s = e2_space(1.0, 0.3);
        assert_eq!(finsler_norm(&v(&[0., 0., 0.]), &s), Err(Error::ZeroVector));
        let bad = e2_space(1.0, 0.6);
        assert!(matches!(
            finsler_norm(&v(&[1., 0., 0.]), &bad),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn admissibility_e2() {
        let g = InnerProduct::identity(3);
        let a = admissible(&v(&[0., 0., 0.3]), &g);
        assert!(a.admissible);
        assert_eq!(a.coefficient_bound, Some(0.5));
        assert!(!admissible(&v(&[0., 0., 0.6]), &g).admissible);
        // boundary is excluded
        assert!(!admissible(&v(&[0., 0., 0.5]), &g).admissible);
        let g2 = InnerProduct::scaled_identity(3, 4.0).unwrap();
        assert_eq!(
            admissible(&v(&[0., 0., 0.2]), &g2).coefficient_bound,
            Some(0.25)
        );
    }

    #[test]
    fn admissibility_alpha_family_direction() {
        let g = InnerProduct::identity(3);
        let bound = 1.0 / (2.0 * 2f64.sqrt());
        let a = admissible(&v(&[0., 0.2, -0.2]), &g);
        assert!(a.admissible);
        assert!((a.coefficient_bound.unwrap() - bound).abs() < 1e-15);
        assert!(!admissible(&v(&[0., 0.36, -0.36]), &g).admissible);
        assert!(admissible(&v(&[0., 0.35, -0.35]), &g).admissible);
    }

    #[test]
    fn drift_outside_m_rejected() {
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
        let id = InnerProduct::identity(3);
        let r = MatsumotoSpace::from_parts(
            "s2",
            alg,
            &id,
            &id,
            &[v(&[0., 0., 1.])],
            v(&[0., 0.1, 0.1]),
            TOL,
        );
        assert!(matches!(r, Err(Error::VectorNotInM { name: "X", .. })));
    }
}
