//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed:
//! `cargo test -p finsler-lie --test acceptance`. Each criterion also has a
//! runtime budget, which counts toward its verdict.

use std::time::{Duration, Instant};

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use finsler_lie::catalog::{self, CatalogEntry};
use finsler_lie::curvature::{bi_invariant_curvature, A_term, B_term};
use finsler_lie::matsumoto::{
    admissible, classify_space, finsler_norm, flag_curvature_bi_invariant, flag_curvature_closed,
    flag_curvature_closed_route, flag_curvature_direct, flag_denominator_closed, flag_report,
    fundamental_tensor, fundamental_tensor_fd, orthonormalize_flag, CurvatureBackend, Flag,
    FlagOptions, Label, MatsumotoSpace,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(r: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| r.sample(StandardNormal))
}

fn v(x: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(x)
}

/// Random vector of `m` (a combination of its basis).
fn in_m(r: &mut ChaCha8Rng, space: &MatsumotoSpace) -> DVector<f64> {
    let m = &space.red.m_basis;
    m.iter().fold(DVector::zeros(space.dim()), |acc, b| {
        acc + b * r.sample::<f64, _>(StandardNormal)
    })
}

fn random_flag(r: &mut ChaCha8Rng, space: &MatsumotoSpace) -> Flag {
    loop {
        let (y, u) = (in_m(r, space), in_m(r, space));
        if let Ok(f) = orthonormalize_flag(&y, &u, space.g()) {
            return f;
        }
    }
}

/// Same algebra and metric with another drift.
fn with_drift(space: &MatsumotoSpace, drift: DVector<f64>) -> MatsumotoSpace {
    MatsumotoSpace::new(
        space.name.clone(),
        space.alg.clone(),
        space.pack.clone(),
        space.red.clone(),
        drift,
        space.tol,
    )
    .expect("drift drawn in m")
}

/// A random drift in `m` with `sqrt<X,X>` uniform in `[0, 0.45]`.
fn random_admissible_drift(r: &mut ChaCha8Rng, space: &MatsumotoSpace) -> DVector<f64> {
    let d = in_m(r, space);
    let n = space.g().norm(&d);
    if n == 0.0 {
        return d;
    }
    d * (r.random_range(0.0..0.45) / n)
}

fn catalog() -> Vec<CatalogEntry> {
    catalog::NAMES
        .iter()
        .map(|n| {
            catalog::by_name(n)
                .unwrap()
                .expect("catalog defaults build")
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2_fixture() -> Outcome {
    let entry = catalog::build_e2(1.0, 0.3).map_err(|e| e.to_string())?;
    let space = &entry.space;
    let data = space.riemannian().map_err(|e| e.to_string())?;
    let r_norm = data.curvature.max_norm();
    ensure(r_norm <= 1e-10, || format!("max|R| = {r_norm:e}"))?;
    let pf = &data.parallel;
    let span_dist = pf.distance(&v(&[0., 0., 1.]), space.g());
    ensure(pf.dim() == 1 && span_dist <= 1e-10, || {
        format!("parallel span dim {} distance to z {span_dist:e}", pf.dim())
    })?;

    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let flag = random_flag(&mut r, space);
        let direct =
            flag_curvature_direct(&flag, space, &data, false).map_err(|e| e.to_string())?;
        let (closed, _) =
            flag_curvature_closed_route(&flag, space, CurvatureBackend::Koszul, Some(&data), false)
                .map_err(|e| e.to_string())?;
        worst = worst.max(direct.k.abs()).max(closed.abs());
    }
    ensure(worst <= 1e-9, || format!("max |K| = {worst:e}"))?;

    let class = classify_space(space, Some(&data.curvature), data.drift_is_parallel(space));
    let want = [
        Label::Berwald,
        Label::GeodesicallyComplete,
        Label::Flat,
        Label::LocallyMinkowskian,
    ];
    ensure(class.labels == want, || {
        format!("labels {:?}", class.labels)
    })?;
    Ok(format!(
        "max|R| {r_norm:.1e}, span distance {span_dist:.1e}, max|K| {worst:.1e}"
    ))
}

fn alpha_fixture() -> Outcome {
    let entry = catalog::build_alpha_family(1.0, 1.0, 0.2).map_err(|e| e.to_string())?;
    let space = &entry.space;
    let data = space.riemannian().map_err(|e| e.to_string())?;
    let r_norm = data.curvature.max_norm();
    ensure(r_norm <= 1e-10, || format!("max|R| = {r_norm:e}"))?;
    let pf = &data.parallel;
    let span_dist = pf.distance(&v(&[0., 1., -1.]), space.g());
    ensure(pf.dim() == 1 && span_dist <= 1e-10, || {
        format!(
            "parallel span dim {} distance to y-z {span_dist:e}",
            pf.dim()
        )
    })?;
    let bound = admissible(&space.drift, space.g())
        .coefficient_bound
        .ok_or("no bound for nonzero drift")?;
    let want = 1.0 / (2.0 * 2f64.sqrt());
    ensure((bound - want).abs() <= 1e-12, || {
        format!("bound {bound} vs {want}")
    })?;
    // just inside and just outside the bound along y - z
    let inside = catalog::build_alpha_family(1.0, 1.0, want - 1e-9).map_err(|e| e.to_string())?;
    let outside = catalog::build_alpha_family(1.0, 1.0, want + 1e-9).map_err(|e| e.to_string())?;
    ensure(inside.space.admissible && !outside.space.admissible, || {
        "admissibility does not switch at the bound".into()
    })?;
    Ok(format!(
        "max|R| {r_norm:.1e}, span distance {span_dist:.1e}, bound {bound:.15}"
    ))
}

fn fundamental_oracle() -> Outcome {
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for entry in catalog() {
        let base = &entry.space;
        for _ in 0..500 {
            let space = with_drift(base, random_admissible_drift(&mut r, base));
            let (y, a, b) = (
                in_m(&mut r, &space),
                gaussian(&mut r, space.dim()),
                gaussian(&mut r, space.dim()),
            );
            let closed = fundamental_tensor(&y, &a, &b, &space).map_err(|e| e.to_string())?;
            let fd = fundamental_tensor_fd(&y, &a, &b, &space, 1e-4).map_err(|e| e.to_string())?;
            let err = (closed - fd).abs() / (1.0 + closed.abs());
            ensure(err <= 1e-5, || {
                format!("{}: closed {closed} fd {fd}", entry.name)
            })?;
            worst = worst.max(err);
            count += 1;
        }
    }
    Ok(format!("{count} draws, worst scaled error {worst:.1e}"))
}

fn su2_x_r_routes() -> Outcome {
    let entry = catalog::build_su2_x_r(0.3).map_err(|e| e.to_string())?;
    let space = &entry.space;
    let data = space.riemannian().map_err(|e| e.to_string())?;
    let both = |flag: &Flag| -> Result<(f64, f64), String> {
        let d = flag_curvature_direct(flag, space, &data, false).map_err(|e| e.to_string())?;
        let (c, _) =
            flag_curvature_closed_route(flag, space, CurvatureBackend::Koszul, Some(&data), false)
                .map_err(|e| e.to_string())?;
        Ok((d.k, c))
    };

    let mut r = rng(4);
    let (mut delta, mut k_min, mut k_max) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..200 {
        let (d, c) = both(&random_flag(&mut r, space))?;
        delta = delta.max((d - c).abs());
        k_min = k_min.min(d);
        k_max = k_max.max(d);
    }
    ensure(delta <= 1e-6, || {
        format!("max |direct - closed| = {delta:e}")
    })?;

    let mut su2_err: f64 = 0.0;
    let mut mixed_err: f64 = 0.0;
    for _ in 0..50 {
        let pick = |r: &mut ChaCha8Rng| {
            let mut w = gaussian(r, 4);
            w[3] = 0.0;
            w
        };
        let flag = orthonormalize_flag(&pick(&mut r), &pick(&mut r), space.g())
            .map_err(|e| e.to_string())?;
        let (d, c) = both(&flag)?;
        su2_err = su2_err.max((d - 0.25).abs()).max((c - 0.25).abs());

        let (s, t): (f64, f64) = (r.sample(StandardNormal), r.sample(StandardNormal));
        let y = v(&[s, 0., 0., t]);
        let u = v(&[t, 0., 0., -s]) + v(&[0.3, 0., 0., 0.7]);
        let flag = orthonormalize_flag(&y, &u, space.g()).map_err(|e| e.to_string())?;
        let (d, c) = both(&flag)?;
        mixed_err = mixed_err.max(d.abs()).max(c.abs());
    }
    for (y, u) in [
        (v(&[1., 0., 0., 0.]), v(&[0., 0., 0., 1.])),
        (v(&[0., 0., 0., 1.]), v(&[1., 0., 0., 0.])),
    ] {
        let (d, c) = both(&orthonormalize_flag(&y, &u, space.g()).map_err(|e| e.to_string())?)?;
        mixed_err = mixed_err.max(d.abs()).max(c.abs());
    }
    ensure(su2_err <= 1e-9, || {
        format!("su(2) flags off 1/4 by {su2_err:e}")
    })?;
    ensure(mixed_err <= 1e-9, || {
        format!("(e1, w) flags off 0 by {mixed_err:e}")
    })?;
    Ok(format!(
        "max delta {delta:.1e}, K range [{k_min:.4}, {k_max:.4}], su(2) err {su2_err:.1e}, (e1,w) err {mixed_err:.1e}"
    ))
}

fn puttmann_specialization() -> Outcome {
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let phi: [f64; 3] = std::array::from_fn(|_| r.random_range(0.2..5.0));
        let entry = catalog::build_su2(phi).map_err(|e| e.to_string())?;
        let space = &entry.space;
        let data = space.riemannian().map_err(|e| e.to_string())?;
        let g = space.g();
        for _ in 0..200 {
            let (u, y, x) = (
                gaussian(&mut r, 3),
                gaussian(&mut r, 3),
                gaussian(&mut r, 3),
            );
            let ryy = data.curvature.apply(&u, &y, &y);
            let (want_a, want_b) = (g.pair(&ryy, &x), g.pair(&ryy, &u));
            let a = A_term(&u, &y, &x, &space.pack, &space.red, &space.alg)
                .map_err(|e| e.to_string())?;
            let b =
                B_term(&u, &y, &space.pack, &space.red, &space.alg).map_err(|e| e.to_string())?;
            let err = ((a - want_a).abs() / (1.0 + want_a.abs()))
                .max((b - want_b).abs() / (1.0 + want_b.abs()));
            ensure(err <= 1e-9, || {
                format!("phi {phi:?}: A {a} vs {want_a}, B {b} vs {want_b}")
            })?;
            worst = worst.max(err);
        }
    }
    Ok(format!("4000 triples, worst scaled error {worst:.1e}"))
}

fn bi_invariant_consistency() -> Outcome {
    let base = catalog::build_su2_x_r(0.0)
        .map_err(|e| e.to_string())?
        .space;
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let u_coef = r.random_range(-0.49..0.49);
        let space = with_drift(&base, v(&[0., 0., 0., u_coef]));
        let flag = random_flag(&mut r, &space);
        let g = space.g();
        let ruy = bi_invariant_curvature(&flag.u, &flag.y, &space.alg);
        let (a, b) = (g.pair(&ruy, &space.drift), g.pair(&ruy, &flag.u));
        let closed = flag_curvature_closed(&flag, &space, a, b).map_err(|e| e.to_string())?;
        let special = flag_curvature_bi_invariant(&flag, &space).map_err(|e| e.to_string())?;
        let err = (closed - special).abs();
        ensure(err <= 1e-10, || {
            format!("u {u_coef}: closed {closed} vs bi-invariant {special}")
        })?;
        worst = worst.max(err);
    }
    Ok(format!("200 configurations, worst {worst:.1e}"))
}

fn zero_drift_collapse() -> Outcome {
    let mut r = rng(7);
    let (mut worst_k, mut worst_g): (f64, f64) = (0.0, 0.0);
    for entry in catalog() {
        let space = with_drift(&entry.space, DVector::zeros(entry.space.dim()));
        let data = space.riemannian().ok();
        let g = space.g();
        for _ in 0..50 {
            let flag = random_flag(&mut r, &space);
            let sectional = match &data {
                Some(d) => d.curvature.sectional_pairing(&flag.u, &flag.y, g),
                None => B_term(&flag.u, &flag.y, &space.pack, &space.red, &space.alg)
                    .map_err(|e| e.to_string())?,
            };
            let rep = flag_report(&flag, &space, data.as_ref(), &FlagOptions::default());
            let vals = rep.values();
            ensure(!vals.is_empty(), || {
                format!("{}: no route applied", entry.name)
            })?;
            for (route, k) in vals {
                let err = (k - sectional).abs();
                ensure(err <= 1e-10, || {
                    format!(
                        "{}: {} gives {k}, sectional {sectional}",
                        entry.name,
                        route.as_str()
                    )
                })?;
                worst_k = worst_k.max(err);
            }
            let (a, b) = (gaussian(&mut r, space.dim()), gaussian(&mut r, space.dim()));
            let gy = fundamental_tensor(&flag.y, &a, &b, &space).map_err(|e| e.to_string())?;
            let plain = g.pair(&a, &b);
            let err = (gy - plain).abs() / (1.0 + plain.abs());
            ensure(err <= 1e-10, || {
                format!("{}: g_Y {gy} vs g {plain}", entry.name)
            })?;
            worst_g = worst_g.max(err);
        }
    }
    Ok(format!(
        "worst K error {worst_k:.1e}, worst g_Y error {worst_g:.1e}"
    ))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn structural_suite() -> Outcome {
    let mut r = rng(8);
    let mut notes = Vec::new();
    for entry in catalog() {
        let space = &entry.space;
        let name = entry.name.as_str();
        let g = space.g();
        let tol = space.tol;
        let data = space.riemannian().ok();

        if let Some(d) = &data {
            let torsion = d.conn.torsion_residual(&space.alg);
            let compat = d.conn.metric_compatibility_residual(g);
            let sym = d.curvature.symmetry_residuals(g).max();
            ensure(torsion <= tol && compat <= tol && sym <= tol, || {
                format!("{name}: torsion {torsion:e}, compatibility {compat:e}, symmetries {sym:e}")
            })?;
        }

        for _ in 0..500 {
            let (y, u) = (in_m(&mut r, space), in_m(&mut r, space));
            let ryyy = match &data {
                Some(d) => g.pair(&d.curvature.apply(&u, &y, &y), &y),
                None => A_term(&u, &y, &y, &space.pack, &space.red, &space.alg)
                    .map_err(|e| e.to_string())?,
            };
            let scale = g.norm(&u) * g.norm(&y).powi(3);
            ensure(ryyy.abs() <= 1e-10 * (1.0 + scale), || {
                format!("{name}: <R(U,Y)Y,Y> = {ryyy:e}")
            })?;

            let f = finsler_norm(&y, space).map_err(|e| e.to_string())?;
            let euler = fundamental_tensor(&y, &y, &y, space).map_err(|e| e.to_string())?;
            ensure(rel(euler, f * f) <= 1e-10, || {
                format!("{name}: g_Y(Y,Y) {euler} vs F^2 {}", f * f)
            })?;
            let gyu = fundamental_tensor(&y, &u, &u, space).map_err(|e| e.to_string())?;
            for c in [0.5, 2.0, 10.0] {
                let cy = &y * c;
                let fc = finsler_norm(&cy, space).map_err(|e| e.to_string())?;
                ensure(rel(fc, c * f) <= 1e-10, || {
                    format!("{name}: F({c}Y) = {fc} vs {}", c * f)
                })?;
                let gc = fundamental_tensor(&cy, &u, &u, space).map_err(|e| e.to_string())?;
                ensure(rel(gc, gyu) <= 1e-10, || {
                    format!("{name}: g_{{cY}} {gc} vs g_Y {gyu}")
                })?;
            }
        }

        let agreement = route_agreement(&mut r, space, data.as_ref())?;
        notes.push(format!("{name} {agreement:.0e}"));
    }

    let steps = 99;
    for i in 0..steps {
        for j in 0..steps {
            let ty = -0.49 + 0.98 * i as f64 / (steps - 1) as f64;
            let tu = -0.49 + 0.98 * j as f64 / (steps - 1) as f64;
            if ty * ty + tu * tu >= 0.25 {
                continue;
            }
            let den = flag_denominator_closed(ty, tu);
            ensure(den > 0.0, || format!("denominator {den} at ({ty}, {tu})"))?;
        }
    }
    Ok(format!("route agreement: {}", notes.join(", ")))
}

/// Pairwise route agreement on random flags and projective invariance of the
/// direct route; returns the worst pairwise delta.
fn route_agreement(
    r: &mut ChaCha8Rng,
    space: &MatsumotoSpace,
    data: Option<&finsler_lie::matsumoto::RiemannianData>,
) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let flag = random_flag(r, space);
        let rep = flag_report(&flag, space, data, &FlagOptions::default());
        ensure(rep.max_pairwise_delta <= 1e-6, || {
            format!(
                "{}: routes disagree by {:e}",
                space.name, rep.max_pairwise_delta
            )
        })?;
        worst = worst.max(rep.max_pairwise_delta);
        if let (Some(d), Some(k)) = (data, rep.k_direct) {
            let c: f64 = r.random_range(0.1..10.0);
            let t: f64 = r.sample(StandardNormal);
            let moved = Flag::new(&flag.y * c, &flag.u + &flag.y * t, space.g())
                .map_err(|e| e.to_string())?;
            let k2 = flag_curvature_direct(&moved, space, d, false)
                .map_err(|e| e.to_string())?
                .k;
            ensure((k2 - k).abs() <= 1e-8 * k.abs().max(1.0), || {
                format!("{}: projective change {k} -> {k2}", space.name)
            })?;
        }
    }
    Ok(worst)
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            title: "E(2) fixture",
            budget: Duration::from_secs(1),
            run: e2_fixture,
        },
        Criterion {
            id: 2,
            title: "alpha-family fixture",
            budget: Duration::from_secs(1),
            run: alpha_fixture,
        },
        Criterion {
            id: 3,
            title: "fundamental tensor oracle",
            budget: Duration::from_secs(10),
            run: fundamental_oracle,
        },
        Criterion {
            id: 4,
            title: "route agreement on su(2)+R",
            budget: Duration::from_secs(5),
            run: su2_x_r_routes,
        },
        Criterion {
            id: 5,
            title: "closed-form pairings vs Koszul",
            budget: Duration::from_secs(5),
            run: puttmann_specialization,
        },
        Criterion {
            id: 6,
            title: "bi-invariant specialisation",
            budget: Duration::from_secs(5),
            run: bi_invariant_consistency,
        },
        Criterion {
            id: 7,
            title: "zero drift collapse",
            budget: Duration::from_secs(2),
            run: zero_drift_collapse,
        },
        Criterion {
            id: 8,
            title: "structural invariants",
            budget: Duration::from_secs(10),
            run: structural_suite,
        },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over_budget = elapsed > c.budget;
        let (status, detail) = match &outcome {
            Ok(d) if !over_budget => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; over budget {:?}", c.budget)),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} [{status}] {} ({:.2?}): {detail}",
            c.id, c.title, elapsed
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
