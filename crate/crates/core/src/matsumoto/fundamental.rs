use nalgebra::DVector;

use super::MatsumotoSpace;
use crate::error::{Error, Result};

/// Default finite-difference step, relative to `α(Y)`.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Fundamental tensor `g_Y(U, V)` of the Matsumoto metric in closed form.
///
/// With `s = sqrt g(Y,Y)` and `t = g(Y,X)`, the form is a sum of a block over
/// `(s − t)²` and a block over `(s − t)⁴`. `Y` need not be unit.
pub fn fundamental_tensor(
    y: &DVector<f64>,
    u: &DVector<f64>,
    v: &DVector<f64>,
    space: &MatsumotoSpace,
) -> Result<f64> {
    for w in [y, u, v] {
        space.alg.check_len(w)?;
    }
    space.require_admissible()?;
    let g = space.g();
    let x = &space.drift;
    let yy = g.norm_sq(y);
    if yy == 0.0 {
        return Err(Error::ZeroVector);
    }
    let s = yy.sqrt();
    let t = g.pair(y, x);
    let (yu, yv, uv) = (g.pair(y, u), g.pair(y, v), g.pair(u, v));
    let (ux, vx) = (g.pair(u, x), g.pair(v, x));
    let d2 = (s - t) * (s - t);

    let first = (4.0 * yu * yv + 2.0 * yy * uv) / d2;
    let second = (-4.0 * yy * yu * yv
        + yy * s * (yv * ux + yu * vx)
        + yy * yy * (3.0 * ux * vx - uv)
        + s * t * (7.0 * yu * yv + yy * uv)
        - 4.0 * yy * t * (yv * ux + yu * vx))
        / (d2 * d2);
    Ok(first + second)
}

/// `g_Y(U, V)` as the mixed second derivative `½ ∂²/∂s∂t F²(Y + sU + tV)`
/// by the four-point central stencil.
///
/// The step is `step · α(Y) / max(α(U), α(V))`, so the stencil stays a fixed
/// fraction of the way from `Y` regardless of scaling.
pub fn fundamental_tensor_fd(
    y: &DVector<f64>,
    u: &DVector<f64>,
    v: &DVector<f64>,
    space: &MatsumotoSpace,
    step: f64,
) -> Result<f64> {
    for w in [y, u, v] {
        space.alg.check_len(w)?;
    }
    let alpha_y = space.alpha(y);
    if alpha_y == 0.0 {
        return Err(Error::ZeroVector);
    }
    let scale = space.alpha(u).max(space.alpha(v));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let h = step * alpha_y / scale;
    let f_sq = |p: &DVector<f64>| -> Result<f64> {
        let a = space.alpha(p);
        let margin = a - space.beta(p);
        if !(margin > 0.0) {
            return Err(Error::ConeViolation { margin });
        }
        let f = a * a / margin;
        Ok(f * f)
    };
    let pp = f_sq(&(y + u * h + v * h))?;
    let pm = f_sq(&(y + u * h - v * h))?;
    let mp = f_sq(&(y - u * h + v * h))?;
    let mm = f_sq(&(y - u * h - v * h))?;
    Ok(0.5 * (pp - pm - mp + mm) / (4.0 * h * h))
}
