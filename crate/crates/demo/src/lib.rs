//! Browser demo: flag curvature as the flagpole turns, the indicatrix of `F`
//! in a coordinate plane, and a classification summary.
//!
//! The plain functions are ordinary Rust and are tested natively; the
//! `#[wasm_bindgen]` wrappers at the bottom only flatten their results for
//! JavaScript.

use std::f64::consts::PI;

use finsler_lie::catalog;
use finsler_lie::matsumoto::{
    admissible, classify_space, finsler_norm, flag_report, orthonormalize_flag, CurvatureBackend,
    Flag, FlagOptions, MatsumotoSpace, Route,
};
use finsler_lie::Vector;
use wasm_bindgen::prelude::*;

/// Catalog entries with a drift coefficient `u`.
pub const SPACES: [&str; 4] = ["e2", "alpha", "su2xr", "abelian"];

pub fn space(name: &str, u: f64) -> Result<MatsumotoSpace, String> {
    if !SPACES.contains(&name) {
        return Err(format!("unknown space {name}"));
    }
    catalog::build(name, &[("u", u)])
        .expect("listed in the catalog")
        .map(|e| e.space)
        .map_err(|e| e.to_string())
}

fn basis(space: &MatsumotoSpace, k: usize) -> Result<Vector, String> {
    if k < space.dim() {
        Ok(space.alg.basis_vector(k))
    } else {
        Err(format!(
            "basis index {k} out of range (dimension {})",
            space.dim()
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub theta: Vec<f64>,
    /// `NaN` where the route refused.
    pub direct: Vec<f64>,
    pub closed: Vec<f64>,
    /// Sectional curvature of `g` on the plane; the same for every flagpole.
    pub sectional: f64,
}

/// Flag curvature on the plane `span{e_a, cos(tilt) e_b + sin(tilt) e_c}`
/// as the flagpole goes once around.
pub fn flag_curve(
    name: &str,
    u: f64,
    plane: [usize; 3],
    tilt: f64,
    samples: usize,
) -> Result<Curve, String> {
    let space = space(name, u)?;
    let [a, b, c] = plane;
    let p = basis(&space, a)?;
    let q = basis(&space, b)? * tilt.cos() + basis(&space, c)? * tilt.sin();
    let g = space.g();
    let frame = orthonormalize_flag(&p, &q, g).map_err(|e| e.to_string())?;
    let data = space.riemannian().map_err(|e| e.to_string())?;
    let sectional = data.curvature.sectional_pairing(&frame.u, &frame.y, g);
    let opts = FlagOptions {
        routes: vec![Route::Direct, Route::Closed],
        backend: CurvatureBackend::Koszul,
        force: false,
    };
    let mut out = Curve {
        theta: Vec::with_capacity(samples),
        direct: Vec::with_capacity(samples),
        closed: Vec::with_capacity(samples),
        sectional,
    };
    for n in 0..samples {
        let theta = 2.0 * PI * n as f64 / samples as f64;
        let (s, co) = theta.sin_cos();
        let flag = Flag {
            y: &frame.y * co + &frame.u * s,
            u: &frame.u * co - &frame.y * s,
            orthonormalized: true,
        };
        let rep = flag_report(&flag, &space, Some(&data), &opts);
        out.theta.push(theta);
        out.direct.push(rep.k_direct.unwrap_or(f64::NAN));
        out.closed.push(rep.k_closed.unwrap_or(f64::NAN));
    }
    Ok(out)
}

/// Points of `{F = 1}` in the plane `span{e_a, e_b}`, as coordinates along
/// `e_a` and `e_b`, interleaved `x0, y0, x1, y1, ...`.
pub fn indicatrix(
    name: &str,
    u: f64,
    a: usize,
    b: usize,
    samples: usize,
) -> Result<Vec<f64>, String> {
    let space = space(name, u)?;
    let (p, q) = (basis(&space, a)?, basis(&space, b)?);
    if a == b {
        return Err("the plane needs two different basis vectors".into());
    }
    let mut pts = Vec::with_capacity(2 * samples);
    for n in 0..samples {
        let (s, c) = (2.0 * PI * n as f64 / samples as f64).sin_cos();
        let f = finsler_norm(&(&p * c + &q * s), &space).map_err(|e| e.to_string())?;
        pts.push(c / f);
        pts.push(s / f);
    }
    Ok(pts)
}

/// Admissibility and classification as `key: value` lines.
pub fn summary(name: &str, u: f64) -> Result<String, String> {
    let space = space(name, u)?;
    let adm = admissible(&space.drift, space.g());
    let data = space.riemannian().map_err(|e| e.to_string())?;
    let class = classify_space(
        &space,
        Some(&data.curvature),
        data.drift_is_parallel(&space),
    );
    let mut lines = vec![
        format!("space: {name}"),
        format!("drift norm: {:.6}", adm.norm),
        format!("admissible: {}", adm.admissible),
    ];
    if let Some(bound) = adm.coefficient_bound {
        lines.push(format!("coefficient bound: |u| < {bound:.6}"));
    }
    lines.push(format!("parallel fields: {}", data.parallel.dim()));
    lines.push(format!("max |R|: {:.3e}", data.curvature.max_norm()));
    let labels: Vec<&str> = class.labels.iter().map(|l| l.as_str()).collect();
    lines.push(format!(
        "labels: {}",
        if labels.is_empty() {
            "none".into()
        } else {
            labels.join(", ")
        }
    ));
    lines.extend(class.notes.iter().map(|n| format!("note: {n}")));
    Ok(lines.join("\n"))
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

/// `[theta..., direct..., closed..., sectional]`, each block `samples` long.
#[wasm_bindgen(js_name = flagCurve)]
pub fn flag_curve_js(
    name: &str,
    u: f64,
    a: usize,
    b: usize,
    c: usize,
    tilt: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    let curve = flag_curve(name, u, [a, b, c], tilt, samples).map_err(js)?;
    let mut out = curve.theta;
    out.extend(curve.direct);
    out.extend(curve.closed);
    out.push(curve.sectional);
    Ok(out)
}

#[wasm_bindgen(js_name = indicatrix)]
pub fn indicatrix_js(
    name: &str,
    u: f64,
    a: usize,
    b: usize,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    indicatrix(name, u, a, b, samples).map_err(js)
}

#[wasm_bindgen(js_name = summary)]
pub fn summary_js(name: &str, u: f64) -> Result<String, JsError> {
    summary(name, u).map_err(js)
}

#[wasm_bindgen(js_name = basisNames)]
pub fn basis_names_js(name: &str) -> Result<Vec<String>, JsError> {
    space(name, 0.0)
        .map(|s| s.alg.basis_names().to_vec())
        .map_err(js)
}
