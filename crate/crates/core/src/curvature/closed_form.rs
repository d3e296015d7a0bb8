//! Curvature pairings that avoid building the connection: the expansions of
//! `<R(U,Y)Y, X>` and `<R(U,Y)Y, U>` for a metric `<u,v> = <φu,v>_0` over a
//! bi-invariant reference product, plus the naturally reductive and
//! bi-invariant shortcuts for `R(U,Y)Y`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::lie_core::{
    InnerProduct, LieAlgebra, MetricPack, ReductiveStructure, DEFAULT_STRUCTURAL_TOL,
};

/// How the `-3/4 <[Y,U], [Y,·]_m>` term treats its first argument.
///
/// The typeset expansion projects only the second bracket onto `m`. When
/// `h = 0` both readings coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MixedPairing {
    #[default]
    AsPrinted,
    ProjectBoth,
}

fn check_preconditions(
    pack: &MetricPack,
    red: &ReductiveStructure,
    vectors: &[(&'static str, &DVector<f64>)],
) -> Result<()> {
    if !pack.g0_bi_invariant {
        return Err(Error::ReferenceMetricNotBiInvariant {
            residual: pack.bi_invariance.worst_residual,
        });
    }
    for &(name, v) in vectors {
        if v.len() != red.dim() {
            return Err(Error::DimensionMismatch {
                expected: red.dim(),
                found: v.len(),
            });
        }
        let residual = red.h_residual(v);
        if residual > DEFAULT_STRUCTURAL_TOL * (1.0 + v.amax()) {
            return Err(Error::VectorNotInM { name, residual });
        }
    }
    Ok(())
}

fn mixed_term(
    y: &DVector<f64>,
    u: &DVector<f64>,
    other: &DVector<f64>,
    pack: &MetricPack,
    red: &ReductiveStructure,
    alg: &LieAlgebra,
    mode: MixedPairing,
) -> f64 {
    let yu = alg.br(y, u);
    let yu = match mode {
        MixedPairing::AsPrinted => yu,
        MixedPairing::ProjectBoth => red.project_m(&yu),
    };
    pack.g.pair(&yu, &red.project_m(&alg.br(y, other)))
}

/// `A = <R(U,Y)Y, X>` evaluated term by term from the closed form.
#[allow(non_snake_case)]
pub fn A_term(
    u: &DVector<f64>,
    y: &DVector<f64>,
    x: &DVector<f64>,
    pack: &MetricPack,
    red: &ReductiveStructure,
    alg: &LieAlgebra,
) -> Result<f64> {
    A_term_with(u, y, x, pack, red, alg, MixedPairing::AsPrinted)
}

#[allow(non_snake_case)]
pub fn A_term_with(
    u: &DVector<f64>,
    y: &DVector<f64>,
    x: &DVector<f64>,
    pack: &MetricPack,
    red: &ReductiveStructure,
    alg: &LieAlgebra,
    mode: MixedPairing,
) -> Result<f64> {
    check_preconditions(pack, red, &[("U", u), ("Y", y), ("X", x)])?;
    let g0 = &pack.g0;
    let b = |a: &DVector<f64>, c: &DVector<f64>| alg.br(a, c);
    let (pu, py, px) = (pack.apply_phi(u), pack.apply_phi(y), pack.apply_phi(x));

    let t1 = -0.25
        * (g0.pair(&(b(&pu, y) + b(u, &py)), &b(y, x))
            + g0.pair(&b(u, y), &(b(&py, x) + b(y, &px))));
    let t2 = -0.75 * mixed_term(y, u, x, pack, red, alg, mode);
    let t3 = -0.5 * g0.pair(&(b(u, &px) + b(x, &pu)), &pack.apply_phi_inv(&b(y, &py)));
    let t4 = 0.25
        * g0.pair(
            &(b(u, &py) + b(y, &pu)),
            &pack.apply_phi_inv(&(b(y, &px) + b(x, &py))),
        );
    Ok(t1 + t2 + t3 + t4)
}

/// `B = <R(U,Y)Y, U>` evaluated term by term from the closed form.
#[allow(non_snake_case)]
pub fn B_term(
    u: &DVector<f64>,
    y: &DVector<f64>,
    pack: &MetricPack,
    red: &ReductiveStructure,
    alg: &LieAlgebra,
) -> Result<f64> {
    B_term_with(u, y, pack, red, alg, MixedPairing::AsPrinted)
}

#[allow(non_snake_case)]
pub fn B_term_with(
    u: &DVector<f64>,
    y: &DVector<f64>,
    pack: &MetricPack,
    red: &ReductiveStructure,
    alg: &LieAlgebra,
    mode: MixedPairing,
) -> Result<f64> {
    check_preconditions(pack, red, &[("U", u), ("Y", y)])?;
    let g0 = &pack.g0;
    let b = |a: &DVector<f64>, c: &DVector<f64>| alg.br(a, c);
    let (pu, py) = (pack.apply_phi(u), pack.apply_phi(y));

    let t1 = -0.5 * g0.pair(&(b(&pu, y) + b(u, &py)), &b(y, u));
    let t2 = -0.75 * mixed_term(y, u, u, pack, red, alg, mode);
    let t3 = -g0.pair(&b(u, &pu), &pack.apply_phi_inv(&b(y, &py)));
    let sym = b(u, &py) + b(y, &pu);
    let t4 = 0.25 * g0.pair(&sym, &pack.apply_phi_inv(&(b(y, &pu) + b(u, &py))));
    Ok(t1 + t2 + t3 + t4)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalReductivity {
    pub naturally_reductive: bool,
    pub worst_residual: f64,
    /// `(z, x, y)` indices into `m_basis`.
    pub worst_triple: [usize; 3],
}

/// Tests `<X,[Z,Y]_m> + <[Z,X]_m, Y> = 0` over all `m_basis` triples.
pub fn naturally_reductive_check(
    red: &ReductiveStructure,
    g: &InnerProduct,
    alg: &LieAlgebra,
    tol: f64,
) -> NaturalReductivity {
    let m = &red.m_basis;
    let mut out = NaturalReductivity {
        naturally_reductive: true,
        worst_residual: 0.0,
        worst_triple: [0, 0, 0],
    };
    for (zi, z) in m.iter().enumerate() {
        let zx: Vec<DVector<f64>> = m.iter().map(|x| red.project_m(&alg.br(z, x))).collect();
        for xi in 0..m.len() {
            for yi in 0..m.len() {
                let r = (g.pair(&m[xi], &zx[yi]) + g.pair(&zx[xi], &m[yi])).abs();
                if r > out.worst_residual {
                    out.worst_residual = r;
                    out.worst_triple = [zi, xi, yi];
                }
            }
        }
    }
    out.naturally_reductive = out.worst_residual <= tol;
    out
}

/// `R(U,Y)Y = 1/4 [Y,[U,Y]_m]_m + [Y,[U,Y]_h]` on a naturally reductive space.
pub fn nat_red_curvature(
    u: &DVector<f64>,
    y: &DVector<f64>,
    red: &ReductiveStructure,
    g: &InnerProduct,
    alg: &LieAlgebra,
    tol: f64,
) -> Result<DVector<f64>> {
    alg.check_len(u)?;
    alg.check_len(y)?;
    let check = naturally_reductive_check(red, g, alg, tol);
    if !check.naturally_reductive {
        return Err(Error::NotNaturallyReductive {
            residual: check.worst_residual,
            triple: check.worst_triple,
        });
    }
    let uy = alg.br(u, y);
    let m_part = red.project_m(&alg.br(y, &red.project_m(&uy))) * 0.25;
    let h_part = alg.br(y, &red.project_h(&uy));
    Ok(m_part + h_part)
}

/// `R(U,Y)Y = -1/4 [[U,Y],Y]` for a bi-invariant metric.
pub fn bi_invariant_curvature(
    u: &DVector<f64>,
    y: &DVector<f64>,
    alg: &LieAlgebra,
) -> DVector<f64> {
    alg.br(&alg.br(u, y), y) * -0.25
}
