//! Flag curvature of a Berwald-type Matsumoto metric.
//!
//! Three routes are provided and are independent enough to cross-check each
//! other:
//!
//! - **direct**: `K = g_Y(R(U,Y)Y, U) / (g_Y(Y,Y) g_Y(U,U) − g_Y(Y,U)²)`
//!   with `R` the Riemann tensor of `g` and `g_Y` the fundamental tensor.
//!   Any independent pair `(Y, U)` is accepted.
//! - **closed**: the rational expression in `A = <R(U,Y)Y, X>`,
//!   `B = <R(U,Y)Y, U>`, `<Y,X>` and `<U,X>` for a g-orthonormal flag, with
//!   `A`, `B` taken from any [`CurvatureBackend`].
//! - **bi-invariant**: the closed expression specialised to
//!   `R(U,Y)Y = −¼[[U,Y],Y]`.
//!
//! The identification of the Finsler curvature with that of `g` holds only
//! when the drift is parallel; otherwise the direct and closed routes refuse
//! unless forced, and forced values are labelled formal.

use nalgebra::DVector;

use super::{fundamental_tensor, orthonormalize_flag, Flag, MatsumotoSpace, RiemannianData};
use crate::curvature::{
    bi_invariant_curvature, nat_red_curvature, naturally_reductive_check, A_term, B_term,
};
use crate::error::{Error, Result};
use crate::lie_core::check_bi_invariance;

/// Source of the curvature pairings `<R(U,Y)Y, ·>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CurvatureBackend {
    #[default]
    Auto,
    Koszul,
    Puttmann,
    NaturallyReductive,
    BiInvariant,
}

impl CurvatureBackend {
    pub fn as_str(self) -> &'static str {
        match self {
            CurvatureBackend::Auto => "auto",
            CurvatureBackend::Koszul => "koszul",
            CurvatureBackend::Puttmann => "puttmann",
            CurvatureBackend::NaturallyReductive => "nat-red",
            CurvatureBackend::BiInvariant => "bi-invariant",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "auto" => CurvatureBackend::Auto,
            "koszul" => CurvatureBackend::Koszul,
            "puttmann" => CurvatureBackend::Puttmann,
            "nat-red" => CurvatureBackend::NaturallyReductive,
            "bi-invariant" => CurvatureBackend::BiInvariant,
            _ => return None,
        })
    }

    /// Resolves `Auto`: Koszul on a group, otherwise the naturally reductive
    /// shortcut when it applies, otherwise the closed-form pairings.
    pub fn resolve(self, space: &MatsumotoSpace) -> CurvatureBackend {
        match self {
            CurvatureBackend::Auto if space.red.is_trivial() => CurvatureBackend::Koszul,
            CurvatureBackend::Auto => {
                if naturally_reductive_check(&space.red, space.g(), &space.alg, space.tol)
                    .naturally_reductive
                {
                    CurvatureBackend::NaturallyReductive
                } else {
                    CurvatureBackend::Puttmann
                }
            }
            other => other,
        }
    }
}

/// `<R(U,Y)Y, W>` for each target `W`, computed by `backend`.
pub fn curvature_pairings(
    backend: CurvatureBackend,
    u: &DVector<f64>,
    y: &DVector<f64>,
    targets: &[&DVector<f64>],
    space: &MatsumotoSpace,
    riemannian: Option<&RiemannianData>,
) -> Result<Vec<f64>> {
    let g = space.g();
    let vector = match backend.resolve(space) {
        // A(U,Y,W) is linear in W, and A(U,Y,U) = B(U,Y).
        CurvatureBackend::Puttmann => {
            return targets
                .iter()
                .map(|w| A_term(u, y, w, &space.pack, &space.red, &space.alg))
                .collect();
        }
        CurvatureBackend::Koszul => {
            let owned;
            let data = match riemannian {
                Some(d) => d,
                None => {
                    owned = space.riemannian()?;
                    &owned
                }
            };
            data.curvature.apply(u, y, y)
        }
        CurvatureBackend::NaturallyReductive => {
            nat_red_curvature(u, y, &space.red, g, &space.alg, space.tol)?
        }
        CurvatureBackend::BiInvariant => {
            if !space.red.is_trivial() {
                return Err(Error::NonTrivialIsotropy {
                    h_dim: space.red.h_dim(),
                });
            }
            let report = check_bi_invariance(g, &space.alg, space.tol);
            if !report.bi_invariant {
                return Err(Error::MetricNotBiInvariant {
                    residual: report.worst_residual,
                });
            }
            bi_invariant_curvature(u, y, &space.alg)
        }
        CurvatureBackend::Auto => unreachable!("resolved above"),
    };
    Ok(targets.iter().map(|w| g.pair(&vector, w)).collect())
}

/// `g_Y(R(U,Y)Y, U)` for a g-orthonormal flag, including the
/// `<R(U,Y)Y, Y>` contributions `sym` (which vanish for a Riemannian `R`).
pub fn flag_numerator_expanded(a: f64, b: f64, sym: f64, t_y: f64, t_u: f64) -> f64 {
    let d = 1.0 - t_y;
    let d2 = d * d;
    2.0 * b / d2 + (sym * t_u + 3.0 * a * t_u - b + t_y * b - 4.0 * t_y * sym * t_u) / (d2 * d2)
}

/// `g_Y(R(U,Y)Y, U)` for a g-orthonormal flag.
pub fn flag_numerator_closed(a: f64, b: f64, t_y: f64, t_u: f64) -> f64 {
    flag_numerator_expanded(a, b, 0.0, t_y, t_u)
}

/// `g_Y(Y,Y) g_Y(U,U) − g_Y(U,Y)²` for a g-orthonormal flag.
pub fn flag_denominator_closed(t_y: f64, t_u: f64) -> f64 {
    let d = 1.0 - t_y;
    let d4 = d.powi(4);
    2.0 / d4 + (2.0 * t_u * t_u + t_y - 1.0) / (d4 * d * d)
}

/// The closed expression
/// `K = (1−t)²{B(1−t)(1−2t) + 3A<U,X>} / ((1−t)(1−2t) + 2<U,X>²)`,
/// `t = <Y,X>`, for a g-orthonormal flag.
pub fn flag_curvature_closed(flag: &Flag, space: &MatsumotoSpace, a: f64, b: f64) -> Result<f64> {
    space.require_admissible()?;
    if !flag.orthonormalized && flag.orthonormality_defect(space.g()) > space.tol {
        return Err(Error::FlagNotOrthonormal);
    }
    let (t, tu) = flag.drift_pairings(&space.drift, space.g());
    let d = 1.0 - t;
    let den = d * (1.0 - 2.0 * t) + 2.0 * tu * tu;
    Ok(d * d * (b * d * (1.0 - 2.0 * t) + 3.0 * a * tu) / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectCurvature {
    pub k: f64,
    /// True when the drift is not parallel and the value was forced: the
    /// Chern connection then differs from Levi-Civita and `k` is not the
    /// flag curvature of `F`.
    pub formal: bool,
    /// `<R(U,Y)Y, Y>`, which must vanish.
    pub symmetry_term: f64,
}

fn check_parallel(space: &MatsumotoSpace, data: &RiemannianData, force: bool) -> Result<bool> {
    if data.drift_is_parallel(space) {
        Ok(false)
    } else if force {
        Ok(true)
    } else {
        Err(Error::DriftNotParallel {
            residual: data.drift_parallel_residual,
        })
    }
}

fn check_symmetry_term(sym: f64, scale: f64, tol: f64) -> Result<()> {
    if sym.abs() > tol * (1.0 + scale) {
        Err(Error::CurvatureSymmetry { value: sym })
    } else {
        Ok(())
    }
}

/// Direct evaluation through the fundamental tensor; valid on any
/// independent pair.
pub fn flag_curvature_direct(
    flag: &Flag,
    space: &MatsumotoSpace,
    data: &RiemannianData,
    force: bool,
) -> Result<DirectCurvature> {
    space.require_admissible()?;
    let formal = check_parallel(space, data, force)?;
    let (y, u) = (&flag.y, &flag.u);
    let r = data.curvature.apply(u, y, y);
    let g = space.g();
    let symmetry_term = g.pair(&r, y);
    check_symmetry_term(symmetry_term, g.norm(&r) * g.norm(y), space.tol)?;

    let num = fundamental_tensor(y, &r, u, space)?;
    let gyy = fundamental_tensor(y, y, y, space)?;
    let guu = fundamental_tensor(y, u, u, space)?;
    let gyu = fundamental_tensor(y, y, u, space)?;
    let den = gyy * guu - gyu * gyu;
    if !(den > 0.0) {
        return Err(Error::FlagDegenerate);
    }
    Ok(DirectCurvature {
        k: num / den,
        formal,
        symmetry_term,
    })
}

/// Closed route end to end: orthonormalizes the flag, takes `A`, `B` (and the
/// vanishing `<R(U,Y)Y, Y>`) from `backend`, and evaluates the closed
/// expression.
pub fn flag_curvature_closed_route(
    flag: &Flag,
    space: &MatsumotoSpace,
    backend: CurvatureBackend,
    riemannian: Option<&RiemannianData>,
    force: bool,
) -> Result<(f64, bool)> {
    space.require_admissible()?;
    let mut formal = false;
    if let Some(data) = riemannian {
        formal = check_parallel(space, data, force)?;
    }
    let flag = flag.to_orthonormal(space.g())?;
    let (u, y) = (&flag.u, &flag.y);
    let (a, b, sym) = match backend.resolve(space) {
        CurvatureBackend::Puttmann => {
            let (pack, red, alg) = (&space.pack, &space.red, &space.alg);
            (
                A_term(u, y, &space.drift, pack, red, alg)?,
                B_term(u, y, pack, red, alg)?,
                A_term(u, y, y, pack, red, alg)?,
            )
        }
        resolved => {
            let p = curvature_pairings(resolved, u, y, &[&space.drift, u, y], space, riemannian)?;
            (p[0], p[1], p[2])
        }
    };
    check_symmetry_term(sym, b.abs().max(a.abs()), space.tol)?;
    Ok((flag_curvature_closed(&flag, space, a, b)?, formal))
}

/// Bi-invariant specialisation. Requires trivial isotropy, a bi-invariant
/// `g`, and a central drift (for bi-invariant `g`, `∇_Y X = ½[Y,X]`).
pub fn flag_curvature_bi_invariant(flag: &Flag, space: &MatsumotoSpace) -> Result<f64> {
    space.require_admissible()?;
    if !space.red.is_trivial() {
        return Err(Error::NonTrivialIsotropy {
            h_dim: space.red.h_dim(),
        });
    }
    let g = space.g();
    let report = check_bi_invariance(g, &space.alg, space.tol);
    if !report.bi_invariant {
        return Err(Error::MetricNotBiInvariant {
            residual: report.worst_residual,
        });
    }
    let x = &space.drift;
    let residual = (0..space.dim())
        .map(|i| (space.alg.br(&space.alg.basis_vector(i), x) * 0.5).amax())
        .fold(0.0, f64::max);
    if residual > space.tol * (1.0 + x.amax()) {
        return Err(Error::DriftNotParallel { residual });
    }
    let flag = orthonormalize_flag(&flag.y, &flag.u, g)?;
    let (y, u) = (&flag.y, &flag.u);
    let (t, tu) = flag.drift_pairings(x, g);
    let uyy = space.alg.br(&space.alg.br(u, y), y);
    let d = 1.0 - t;
    let m = d * (1.0 - 2.0 * t);
    Ok(-(d * d) / (4.0 * m + 8.0 * tu * tu) * (g.pair(&uyy, u) * m + 3.0 * g.pair(&uyy, x) * tu))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Direct,
    Closed,
    BiInvariant,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Direct, Route::Closed, Route::BiInvariant];

    pub fn as_str(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Closed => "closed",
            Route::BiInvariant => "bi-invariant",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Route::ALL.into_iter().find(|r| r.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RouteStatus {
    Computed,
    /// Forced despite a non-parallel drift.
    Formal,
    NotApplicable {
        error: Error,
    },
    NotRequested,
}

impl RouteStatus {
    pub fn describe(&self) -> String {
        match self {
            RouteStatus::Computed => "ok".into(),
            RouteStatus::Formal => "formal value (Chern != Levi-Civita)".into(),
            RouteStatus::NotApplicable { error } => {
                format!("not applicable: {} ({error})", error.name())
            }
            RouteStatus::NotRequested => "not requested".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KReport {
    pub k_direct: Option<f64>,
    pub k_closed: Option<f64>,
    pub k_bi_invariant: Option<f64>,
    pub closed_backend: CurvatureBackend,
    pub route_flags: Vec<(Route, RouteStatus)>,
    pub max_pairwise_delta: f64,
}

impl KReport {
    pub fn values(&self) -> Vec<(Route, f64)> {
        [
            (Route::Direct, self.k_direct),
            (Route::Closed, self.k_closed),
            (Route::BiInvariant, self.k_bi_invariant),
        ]
        .into_iter()
        .filter_map(|(r, v)| v.map(|v| (r, v)))
        .collect()
    }

    pub fn status(&self, route: Route) -> Option<&RouteStatus> {
        self.route_flags
            .iter()
            .find(|(r, _)| *r == route)
            .map(|(_, s)| s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlagOptions {
    pub routes: Vec<Route>,
    pub backend: CurvatureBackend,
    pub force: bool,
}

impl Default for FlagOptions {
    fn default() -> Self {
        Self {
            routes: Route::ALL.to_vec(),
            backend: CurvatureBackend::Auto,
            force: false,
        }
    }
}

/// Evaluates every requested route on one flag. Inapplicable routes are
/// recorded in `route_flags` rather than failing the whole report.
pub fn flag_report(
    flag: &Flag,
    space: &MatsumotoSpace,
    riemannian: Option<&RiemannianData>,
    opts: &FlagOptions,
) -> KReport {
    let mut report = KReport {
        k_direct: None,
        k_closed: None,
        k_bi_invariant: None,
        closed_backend: opts.backend.resolve(space),
        route_flags: Vec::with_capacity(3),
        max_pairwise_delta: 0.0,
    };
    for route in Route::ALL {
        if !opts.routes.contains(&route) {
            report.route_flags.push((route, RouteStatus::NotRequested));
            continue;
        }
        let outcome: Result<(f64, bool)> = match route {
            Route::Direct => match riemannian {
                Some(data) => {
                    flag_curvature_direct(flag, space, data, opts.force).map(|d| (d.k, d.formal))
                }
                None => Err(Error::NonTrivialIsotropy {
                    h_dim: space.red.h_dim(),
                }),
            },
            Route::Closed => {
                flag_curvature_closed_route(flag, space, opts.backend, riemannian, opts.force)
            }
            Route::BiInvariant => flag_curvature_bi_invariant(flag, space).map(|k| (k, false)),
        };
        let status = match outcome {
            Ok((k, formal)) => {
                match route {
                    Route::Direct => report.k_direct = Some(k),
                    Route::Closed => report.k_closed = Some(k),
                    Route::BiInvariant => report.k_bi_invariant = Some(k),
                }
                if formal {
                    RouteStatus::Formal
                } else {
                    RouteStatus::Computed
                }
            }
            Err(error) => RouteStatus::NotApplicable { error },
        };
        report.route_flags.push((route, status));
    }
    let vals = report.values();
    for (i, (_, a)) in vals.iter().enumerate() {
        for (_, b) in &vals[i + 1..] {
            report.max_pairwise_delta = report.max_pairwise_delta.max((a - b).abs());
        }
    }
    report
}
