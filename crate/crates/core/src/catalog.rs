//! Worked example spaces with their known answers.
//!
//! Each builder returns the space together with an [`Expected`] record. The
//! record is data, checked by [`check_expectations`] through the same
//! generic pipeline used for any user-supplied space, so adding an example
//! never needs new test code.

use nalgebra::DVector;

use crate::curvature::parallel_fields;
use crate::error::{Error, Result};
use crate::lie_core::{BracketEntry, InnerProduct, LieAlgebra, DEFAULT_STRUCTURAL_TOL, MAX_DIM};
use crate::matsumoto::{admissible, flag_report, orthonormalize_flag, FlagOptions, MatsumotoSpace};

/// Known answers for a catalog space. `None` means "not asserted".
#[derive(Debug, Clone, PartialEq)]
pub struct Expected {
    pub r_is_zero: Option<bool>,
    /// Spanning set of the parallel invariant fields.
    pub parallel_span: Option<Vec<DVector<f64>>>,
    /// Exclusive bound on the drift coefficient along its direction.
    pub admissible_bound: Option<f64>,
    /// Constant flag curvature, when the space has one.
    pub expected_k: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<(&'static str, f64)>,
    pub space: MatsumotoSpace,
    pub expected: Expected,
}

pub const NAMES: [&str; 6] = ["e2", "alpha", "abelian", "su2", "su2xr", "s2"];

/// Parameters accepted by [`build`] for each entry, with their defaults.
pub fn parameters(name: &str) -> Option<&'static [(&'static str, f64)]> {
    Some(match name {
        "e2" => &[("lambda", 1.0), ("u", 0.3)],
        "alpha" => &[("alpha", 1.0), ("lambda", 1.0), ("u", 0.2)],
        "abelian" => &[("dim", 3.0), ("u", 0.3)],
        "su2" => &[("phi1", 1.0), ("phi2", 1.0), ("phi3", 1.0)],
        "su2xr" => &[("u", 0.3)],
        "s2" => &[],
        _ => return None,
    })
}

/// One-line description of each entry.
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "e2" => "Euclidean motions of the plane, g = lambda^2 I, X = u z",
        "alpha" => "flat unimodular family, g = lambda^2 I, X = u (y - z)",
        "abelian" => "abelian algebra of dimension dim, g = I, X = u e1",
        "su2" => "su(2), bi-invariant reference I, g = diag(phi1, phi2, phi3), X = 0",
        "su2xr" => "su(2) + R with product bi-invariant metric, X = u w",
        "s2" => "SU(2)/U(1), h = span{e3}, normal metric, X = 0",
        _ => return None,
    })
}

/// Builds a catalog entry with its default parameters.
pub fn by_name(name: &str) -> Option<Result<CatalogEntry>> {
    build(name, &[])
}

/// Builds a catalog entry, overriding defaults with `overrides`.
pub fn build(name: &str, overrides: &[(&str, f64)]) -> Option<Result<CatalogEntry>> {
    let defaults = parameters(name)?;
    if let Some((unknown, _)) = overrides
        .iter()
        .find(|(k, _)| !defaults.iter().any(|(d, _)| d == k))
    {
        return Some(Err(Error::UnknownParameter {
            name: unknown.to_string(),
        }));
    }
    let p = |key: &str| {
        overrides
            .iter()
            .rev()
            .find(|(k, _)| *k == key)
            .or_else(|| defaults.iter().find(|(k, _)| *k == key))
            .map(|(_, v)| *v)
            .expect("parameter listed")
    };
    let built = match name {
        "e2" => build_e2(p("lambda"), p("u")),
        "alpha" => build_alpha_family(p("alpha"), p("lambda"), p("u")),
        "abelian" => {
            let dim = p("dim");
            if dim.fract() != 0.0 || !(1.0..=MAX_DIM as f64).contains(&dim) {
                return Some(Err(Error::InvalidParameter {
                    name: "dim",
                    value: dim,
                }));
            }
            let dim = dim as usize;
            let mut x = DVector::zeros(dim);
            x[0] = p("u");
            build_abelian(dim, InnerProduct::identity(dim), x)
        }
        "su2" => build_su2([p("phi1"), p("phi2"), p("phi3")]),
        "su2xr" => build_su2_x_r(p("u")),
        "s2" => build_s2(),
        _ => unreachable!("parameters() knows every name"),
    };
    Some(built.map(|mut entry| {
        entry.params = defaults.iter().map(|(k, _)| (*k, p(k))).collect();
        entry
    }))
}

fn vec3(a: f64, b: f64, c: f64) -> DVector<f64> {
    DVector::from_column_slice(&[a, b, c])
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

fn su2_brackets(dim: usize) -> Vec<BracketEntry> {
    let e = |k: usize, s: f64| {
        let mut c = vec![0.0; dim];
        c[k] = s;
        c
    };
    vec![
        BracketEntry::new(0, 1, e(2, 1.0)),
        BracketEntry::new(1, 2, e(0, 1.0)),
        BracketEntry::new(0, 2, e(1, -1.0)),
    ]
}

/// The Euclidean motion group of the plane: `[x,y] = 0`, `[y,z] = x`,
/// `[z,x] = y`, metric `λ²·I`, drift `u·z`.
pub fn build_e2(lambda: f64, u: f64) -> Result<CatalogEntry> {
    positive("lambda", lambda)?;
    let tol = DEFAULT_STRUCTURAL_TOL;
    let alg = LieAlgebra::new(
        3,
        &[
            BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
            BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
        ],
        tol,
    )?
    .with_names(["x", "y", "z"])?;
    let g = InnerProduct::scaled_identity(3, lambda * lambda)?;
    let space = MatsumotoSpace::from_parts("e2", alg, &g, &g, &[], vec3(0.0, 0.0, u), tol)?;
    Ok(CatalogEntry {
        name: "e2".into(),
        params: vec![("lambda", lambda), ("u", u)],
        space,
        expected: Expected {
            r_is_zero: Some(true),
            parallel_span: Some(vec![vec3(0.0, 0.0, 1.0)]),
            admissible_bound: Some(1.0 / (2.0 * lambda)),
            expected_k: Some(0.0),
        },
    })
}

/// `[x,y] = αy + αz`, `[y,z] = 2αx`, `[z,x] = αy + αz`, metric `λ²·I`,
/// drift `u(y − z)`.
pub fn build_alpha_family(alpha: f64, lambda: f64, u: f64) -> Result<CatalogEntry> {
    positive("lambda", lambda)?;
    let tol = DEFAULT_STRUCTURAL_TOL;
    let alg = LieAlgebra::new(
        3,
        &[
            BracketEntry::new(0, 1, [0.0, alpha, alpha]),
            BracketEntry::new(1, 2, [2.0 * alpha, 0.0, 0.0]),
            BracketEntry::new(0, 2, [0.0, -alpha, -alpha]),
        ],
        tol,
    )?
    .with_names(["x", "y", "z"])?;
    let g = InnerProduct::scaled_identity(3, lambda * lambda)?;
    let space = MatsumotoSpace::from_parts("alpha", alg, &g, &g, &[], vec3(0.0, u, -u), tol)?;
    let parallel_span = if alpha == 0.0 {
        vec![
            vec3(1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(0.0, 0.0, 1.0),
        ]
    } else {
        vec![vec3(0.0, 1.0, -1.0)]
    };
    Ok(CatalogEntry {
        name: "alpha".into(),
        params: vec![("alpha", alpha), ("lambda", lambda), ("u", u)],
        space,
        expected: Expected {
            r_is_zero: Some(true),
            parallel_span: Some(parallel_span),
            admissible_bound: Some(1.0 / (2.0 * 2f64.sqrt() * lambda)),
            expected_k: Some(0.0),
        },
    })
}

/// An abelian algebra with an arbitrary metric and drift.
pub fn build_abelian(dim: usize, g: InnerProduct, x: DVector<f64>) -> Result<CatalogEntry> {
    let tol = DEFAULT_STRUCTURAL_TOL;
    let alg = LieAlgebra::abelian(dim)?;
    if g.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: g.dim(),
        });
    }
    let bound = admissible(&x, &g).coefficient_bound;
    let space = MatsumotoSpace::from_parts("abelian", alg, &g, &g, &[], x, tol)?;
    Ok(CatalogEntry {
        name: "abelian".into(),
        params: vec![("dim", dim as f64)],
        space,
        expected: Expected {
            r_is_zero: Some(true),
            parallel_span: Some(
                (0..dim)
                    .map(|i| {
                        let mut v = DVector::zeros(dim);
                        v[i] = 1.0;
                        v
                    })
                    .collect(),
            ),
            admissible_bound: bound,
            expected_k: Some(0.0),
        },
    })
}

/// su(2) with `[e1,e2] = e3` cyclic, bi-invariant reference `I`, and
/// `g = diag(phi)`; zero drift.
pub fn build_su2(phi_diag: [f64; 3]) -> Result<CatalogEntry> {
    for p in phi_diag {
        positive("phi", p)?;
    }
    let tol = DEFAULT_STRUCTURAL_TOL;
    let alg = LieAlgebra::new(3, &su2_brackets(3), tol)?;
    let g = InnerProduct::diagonal(&phi_diag)?;
    let space = MatsumotoSpace::from_parts(
        "su2",
        alg,
        &InnerProduct::identity(3),
        &g,
        &[],
        DVector::zeros(3),
        tol,
    )?;
    let round = phi_diag.iter().all(|&p| p == phi_diag[0]);
    Ok(CatalogEntry {
        name: "su2".into(),
        params: vec![
            ("phi1", phi_diag[0]),
            ("phi2", phi_diag[1]),
            ("phi3", phi_diag[2]),
        ],
        space,
        expected: Expected {
            r_is_zero: Some(false),
            parallel_span: Some(Vec::new()),
            admissible_bound: None,
            // round S^3 of radius 2·sqrt(phi)
            expected_k: round.then(|| 0.25 / phi_diag[0]),
        },
    })
}

/// su(2) ⊕ R with the product bi-invariant metric and drift `u·w` along the
/// center.
pub fn build_su2_x_r(u: f64) -> Result<CatalogEntry> {
    let tol = DEFAULT_STRUCTURAL_TOL;
    let alg = LieAlgebra::new(4, &su2_brackets(4), tol)?.with_names(["e1", "e2", "e3", "w"])?;
    let id = InnerProduct::identity(4);
    let space = MatsumotoSpace::from_parts(
        "su2xr",
        alg,
        &id,
        &id,
        &[],
        DVector::from_column_slice(&[0.0, 0.0, 0.0, u]),
        tol,
    )?;
    Ok(CatalogEntry {
        name: "su2xr".into(),
        params: vec![("u", u)],
        space,
        expected: Expected {
            r_is_zero: Some(false),
            parallel_span: Some(vec![DVector::from_column_slice(&[0.0, 0.0, 0.0, 1.0])]),
            admissible_bound: Some(0.5),
            expected_k: None,
        },
    })
}

/// The normal homogeneous sphere SU(2)/U(1): `h = span{e3}`, `g = g0 = I`.
/// Naturally reductive, with constant curvature 1 on `m`.
pub fn build_s2() -> Result<CatalogEntry> {
    let tol = DEFAULT_STRUCTURAL_TOL;
    let alg = LieAlgebra::new(3, &su2_brackets(3), tol)?;
    let id = InnerProduct::identity(3);
    let space = MatsumotoSpace::from_parts(
        "s2",
        alg,
        &id,
        &id,
        &[vec3(0.0, 0.0, 1.0)],
        DVector::zeros(3),
        tol,
    )?;
    Ok(CatalogEntry {
        name: "s2".into(),
        params: Vec::new(),
        space,
        expected: Expected {
            r_is_zero: None,
            parallel_span: None,
            admissible_bound: None,
            expected_k: Some(1.0),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationCheck {
    pub what: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Tolerances used by [`check_expectations`].
pub const FLAT_TOL: f64 = 1e-10;
pub const SPAN_TOL: f64 = 1e-10;
pub const BOUND_TOL: f64 = 1e-12;
pub const CONSTANT_K_TOL: f64 = 1e-9;

/// Re-derives every asserted expectation with the generic pipeline.
pub fn check_expectations(entry: &CatalogEntry) -> Result<Vec<ExpectationCheck>> {
    let space = &entry.space;
    let g = space.g();
    let mut out = Vec::new();
    let riemannian = if space.red.is_trivial() {
        Some(space.riemannian()?)
    } else {
        None
    };

    if let (Some(want), Some(data)) = (entry.expected.r_is_zero, riemannian.as_ref()) {
        let norm = data.curvature.max_norm();
        out.push(ExpectationCheck {
            what: "r_is_zero",
            passed: (norm <= FLAT_TOL) == want,
            detail: format!("max|R| = {norm:.3e}, expected zero: {want}"),
        });
    }

    if let (Some(span), Some(data)) = (&entry.expected.parallel_span, riemannian.as_ref()) {
        let pf = parallel_fields(&data.conn, g);
        let dims_match = pf.dim() == span.len();
        let worst = span
            .iter()
            .map(|v| pf.distance(v, g) / g.norm(v))
            .fold(0.0, f64::max);
        out.push(ExpectationCheck {
            what: "parallel_span",
            passed: dims_match && worst <= SPAN_TOL,
            detail: format!(
                "dim {} (expected {}), worst relative distance {worst:.3e}",
                pf.dim(),
                span.len()
            ),
        });
    }

    if let Some(bound) = entry.expected.admissible_bound {
        let got = admissible(&space.drift, g).coefficient_bound;
        out.push(ExpectationCheck {
            what: "admissible_bound",
            passed: got.is_some_and(|b| (b - bound).abs() <= BOUND_TOL),
            detail: format!("bound {got:?}, expected {bound}"),
        });
    }

    if let Some(k) = entry.expected.expected_k {
        let worst = deterministic_flags(space)?
            .iter()
            .map(|(y, u)| {
                let flag = orthonormalize_flag(y, u, g)?;
                let rep = flag_report(&flag, space, riemannian.as_ref(), &FlagOptions::default());
                let vals = rep.values();
                if vals.is_empty() {
                    return Err(Error::FlagDegenerate);
                }
                Ok(vals.iter().map(|(_, v)| (v - k).abs()).fold(0.0, f64::max))
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        out.push(ExpectationCheck {
            what: "expected_k",
            passed: worst <= CONSTANT_K_TOL,
            detail: format!("max |K - {k}| = {worst:.3e}"),
        });
    }
    Ok(out)
}

/// Basis pairs of `m` plus mixed combinations; enough to probe a constant
/// curvature claim without randomness.
fn deterministic_flags(space: &MatsumotoSpace) -> Result<Vec<(DVector<f64>, DVector<f64>)>> {
    let m = &space.red.m_basis;
    let mut flags = Vec::new();
    for i in 0..m.len() {
        for j in 0..m.len() {
            if i == j {
                continue;
            }
            flags.push((m[i].clone(), m[j].clone()));
            let k = (j + 1) % m.len();
            let y = &m[i] + &m[j] * 0.5;
            let u = &m[k] - &m[i] * 0.3 + &m[j] * 0.7;
            flags.push((y, u));
        }
    }
    // drop accidental dependent pairs
    Ok(flags
        .into_iter()
        .filter(|(y, u)| orthonormalize_flag(y, u, space.g()).is_ok())
        .collect())
}
