//! One function per verb. Each returns a [`Report`]; failures that still
//! leave something worth printing come back through [`Output`].

use finsler_lie::catalog;
use finsler_lie::curvature::naturally_reductive_check;
use finsler_lie::lie_core::check_bi_invariance;
use finsler_lie::matsumoto::{
    admissible, classify_space, coefficient_bound, curvature_pairings, finsler_norm, flag_report,
    fundamental_tensor, fundamental_tensor_fd, orthonormalize_flag, unit_max_coordinate,
    CurvatureBackend, Flag, FlagOptions, KReport, MatsumotoSpace, Route, RouteStatus,
};
use finsler_lie::Vector;

use crate::output::{Report, Value};
use crate::spacefile::SpaceFile;
use crate::{CliError, Settings};

/// A report plus an optional failure that decides the exit code.
#[derive(Debug)]
pub struct Output {
    pub report: Report,
    pub failure: Option<CliError>,
}

impl From<Report> for Output {
    fn from(report: Report) -> Self {
        Self {
            report,
            failure: None,
        }
    }
}

fn names(space: &MatsumotoSpace, idx: &[usize]) -> String {
    idx.iter()
        .map(|&k| space.alg.basis_names()[k].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

fn drift_fields(r: &mut Report, space: &MatsumotoSpace) {
    let adm = admissible(&space.drift, space.g());
    r.field("drift", &space.drift)
        .field("drift.norm", adm.norm)
        .field("drift.admissible", adm.admissible);
    if let (Some(c), Some(b)) = (adm.coefficient, adm.coefficient_bound) {
        r.field("drift.coefficient", c)
            .field("drift.coefficient_bound", b);
    }
}

pub fn validate(space: &MatsumotoSpace, settings: &Settings) -> Report {
    let mut r = Report::new();
    r.section(format!("space {}", space.name))
        .field("status", "ok")
        .field("name", space.name.as_str())
        .field("dim", space.dim())
        .field("basis", space.alg.basis_names().join(","))
        .field("h_dim", space.red.h_dim())
        .field("m_dim", space.red.m_dim());

    r.section("structure");
    let jac = space.alg.jacobi();
    r.field("jacobi.residual", jac.residual);
    if jac.residual > 0.0 {
        r.field("jacobi.worst_triple", names(space, &jac.triple));
    }
    let pack = &space.pack;
    r.field("g0.bi_invariant", pack.g0_bi_invariant).field(
        "g0.bi_invariance_residual",
        pack.bi_invariance.worst_residual,
    );
    let g_bi = check_bi_invariance(space.g(), &space.alg, space.tol);
    r.field("g.bi_invariant", g_bi.bi_invariant)
        .field("g.bi_invariance_residual", g_bi.worst_residual)
        .field("phi.residual", pack.phi_residual)
        .field("reductive.closure_residual", space.red.closure_residual)
        .field("reductive.ad_h_invariance", space.red.ad_h_invariance());
    let nr = naturally_reductive_check(&space.red, space.g(), &space.alg, space.tol);
    r.field("naturally_reductive", nr.naturally_reductive)
        .field("naturally_reductive.residual", nr.worst_residual);

    r.section("drift");
    drift_fields(&mut r, space);
    r.section("tolerances")
        .field("tol.structural", settings.structural)
        .field("tol.agree", settings.agree)
        .field("tol.fd_step", settings.fd_step);
    r
}

pub fn connection(space: &MatsumotoSpace) -> Result<Report, CliError> {
    let data = space.riemannian()?;
    let n = space.dim();
    let mut r = Report::new();
    r.section("Levi-Civita connection, nabla_(a) b");
    for a in 0..n {
        for b in 0..n {
            let v = data
                .conn
                .covariant(&space.alg.basis_vector(a), &space.alg.basis_vector(b));
            r.field(
                format!("nabla.{}", names(space, &[a, b]).replace(',', ".")),
                &v,
            );
        }
    }
    r.section("checks")
        .field("torsion_residual", data.conn.torsion_residual(&space.alg))
        .field(
            "metric_compatibility_residual",
            data.conn.metric_compatibility_residual(space.g()),
        );
    Ok(r)
}

/// Basis of `m` with display labels: the coordinate names when `h = 0`,
/// `m1, m2, ...` otherwise.
fn m_basis(space: &MatsumotoSpace) -> Vec<(String, Vector)> {
    if space.red.is_trivial() {
        (0..space.dim())
            .map(|k| {
                (
                    space.alg.basis_names()[k].clone(),
                    space.alg.basis_vector(k),
                )
            })
            .collect()
    } else {
        space
            .red
            .m_basis
            .iter()
            .enumerate()
            .map(|(k, v)| (format!("m{}", k + 1), v.clone()))
            .collect()
    }
}

pub fn curvature(space: &MatsumotoSpace, backend: CurvatureBackend) -> Result<Report, CliError> {
    let resolved = backend.resolve(space);
    let mut r = Report::new();
    r.section("curvature").field("backend", resolved.as_str());
    let data = match resolved {
        CurvatureBackend::Koszul => Some(space.riemannian()?),
        _ => None,
    };
    if let Some(d) = &data {
        let n = space.dim();
        r.section("components, R(a,b)c");
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let (ei, ej, ek) = (
                        space.alg.basis_vector(i),
                        space.alg.basis_vector(j),
                        space.alg.basis_vector(k),
                    );
                    r.field(
                        format!("R.{}", names(space, &[i, j, k]).replace(',', ".")),
                        &d.curvature.apply(&ei, &ej, &ek),
                    );
                }
            }
        }
        let sym = d.curvature.symmetry_residuals(space.g());
        r.section("symmetries")
            .field("max_norm", d.curvature.max_norm())
            .field("symmetry.antisymmetry", sym.antisymmetry)
            .field("symmetry.pairing", sym.pairing)
            .field("symmetry.bianchi", sym.bianchi);
    }

    let m = m_basis(space);
    let g = space.g();
    if !space.red.is_trivial() {
        r.section("basis of m");
        for (label, v) in &m {
            r.field(format!("m.{label}"), v);
        }
    }
    r.section("pairings <R(a,b)b, c> over c in m, and sectional curvatures");
    let targets: Vec<&Vector> = m.iter().map(|(_, v)| v).collect();
    let mut pairings = vec![vec![Vec::new(); m.len()]; m.len()];
    let mut r_yyy: f64 = 0.0;
    for (a, (la, va)) in m.iter().enumerate() {
        for (b, (lb, vb)) in m.iter().enumerate() {
            if a == b {
                continue;
            }
            let p = curvature_pairings(resolved, va, vb, &targets, space, data.as_ref())?;
            r_yyy = r_yyy.max(p[b].abs());
            r.field(format!("pairing.{la}.{lb}"), Value::Vec(p.clone()));
            pairings[a][b] = p;
        }
    }
    let mut pair_sym: f64 = 0.0;
    for (a, (la, va)) in m.iter().enumerate() {
        for (b, (lb, vb)) in m.iter().enumerate().skip(a + 1) {
            let gram = g.norm_sq(va) * g.norm_sq(vb) - g.pair(va, vb).powi(2);
            r.field(format!("sectional.{la}.{lb}"), pairings[a][b][a] / gram);
            pair_sym = pair_sym.max((pairings[a][b][a] - pairings[b][a][b]).abs());
        }
    }
    r.section("checks")
        .field("check.r_yyy_max", r_yyy)
        .field("check.pair_symmetry_max", pair_sym);
    Ok(r)
}

pub fn parallel(space: &MatsumotoSpace) -> Result<Report, CliError> {
    let data = space.riemannian()?;
    let g = space.g();
    let mut r = Report::new();
    r.section("parallel invariant fields")
        .field("dim", data.parallel.dim());
    for (k, v) in data.parallel.basis.iter().enumerate() {
        let generator = unit_max_coordinate(v);
        r.field(format!("field.{}", k + 1), &generator).field(
            format!("field.{}.bound", k + 1),
            coefficient_bound(&generator, g),
        );
    }
    r.section("drift")
        .field("drift.parallel_residual", data.drift_parallel_residual)
        .field("drift.is_parallel", data.drift_is_parallel(space));
    drift_fields(&mut r, space);
    Ok(r)
}

fn status_word(s: &RouteStatus) -> &'static str {
    match s {
        RouteStatus::Computed => "ok",
        RouteStatus::Formal => "formal",
        RouteStatus::NotApplicable { .. } => "not_applicable",
        RouteStatus::NotRequested => "not_requested",
    }
}

/// Route fields of a [`KReport`], and the failure it implies.
pub(crate) fn k_report_fields(r: &mut Report, rep: &KReport, agree_tol: f64) -> Option<CliError> {
    r.field("backend", rep.closed_backend.as_str());
    for route in Route::ALL {
        let name = route.as_str();
        let status = rep.status(route).expect("every route has a status");
        r.field(format!("route.{name}"), status_word(status));
        if let RouteStatus::NotApplicable { error } = status {
            r.field(format!("route.{name}.error"), error.name())
                .field(format!("route.{name}.reason"), error.to_string());
        }
        if let Some((_, k)) = rep.values().into_iter().find(|(rt, _)| *rt == route) {
            r.field(format!("k.{name}"), k);
        }
    }
    let agree = rep.max_pairwise_delta <= agree_tol;
    r.field("max_pairwise_delta", rep.max_pairwise_delta)
        .field("agree", agree);

    if rep.values().is_empty() {
        let first = rep.route_flags.iter().find_map(|(_, s)| match s {
            RouteStatus::NotApplicable { error } => Some(error.clone()),
            _ => None,
        });
        return Some(match first {
            Some(e) => CliError::Core(e),
            None => CliError::Route("no route was requested".into()),
        });
    }
    (!agree).then(|| {
        CliError::Route(format!(
            "routes disagree by {:e} (tolerance {agree_tol:e})",
            rep.max_pairwise_delta
        ))
    })
}

#[allow(clippy::too_many_arguments)]
pub fn flag(
    space: &MatsumotoSpace,
    settings: &Settings,
    y: &Vector,
    u: &Vector,
    routes: &[Route],
    backend: CurvatureBackend,
    force: bool,
) -> Result<Output, CliError> {
    let g = space.g();
    let raw = Flag::new(y.clone(), u.clone(), g)?;
    let on = orthonormalize_flag(y, u, g)?;
    let data = if space.red.is_trivial() {
        Some(space.riemannian()?)
    } else {
        None
    };
    let mut r = Report::new();
    r.section("flag")
        .field("y", y)
        .field("u", u)
        .field("y.orthonormal", &on.y)
        .field("u.orthonormal", &on.u);
    let (ty, tu) = on.drift_pairings(&space.drift, g);
    r.field("t_y", ty).field("t_u", tu);
    if space.admissible {
        r.field("F(y)", finsler_norm(y, space)?);
        let pairs = [(y, y), (u, u), (y, u)];
        let closed = pairs
            .iter()
            .map(|(a, b)| fundamental_tensor(y, a, b, space))
            .collect::<finsler_lie::Result<Vec<_>>>()?;
        let fd = pairs
            .iter()
            .map(|(a, b)| fundamental_tensor_fd(y, a, b, space, settings.fd_step))
            .collect::<finsler_lie::Result<Vec<_>>>()?;
        let err = closed
            .iter()
            .zip(&fd)
            .map(|(c, f)| (c - f).abs() / (1.0 + c.abs()))
            .fold(0.0, f64::max);
        r.section("fundamental tensor g_y on (y,y), (u,u), (y,u)")
            .field("fundamental.closed", Value::Vec(closed))
            .field("fundamental.fd", Value::Vec(fd))
            .field("fundamental.max_scaled_error", err);
    } else {
        r.field("admissible", false);
    }

    let opts = FlagOptions {
        routes: routes.to_vec(),
        backend,
        force,
    };
    let rep = flag_report(&raw, space, data.as_ref(), &opts);
    r.section("flag curvature");
    let failure = k_report_fields(&mut r, &rep, settings.agree);
    Ok(Output { report: r, failure })
}

pub fn report(space: &MatsumotoSpace) -> Report {
    let data = space.riemannian().ok();
    let parallel_ok = match &data {
        Some(d) => d.drift_is_parallel(space),
        // without a group connection only the zero drift is known to be parallel
        None => space.drift.iter().all(|&c| c == 0.0),
    };
    let class = classify_space(space, data.as_ref().map(|d| &d.curvature), parallel_ok);
    let mut r = Report::new();
    r.section(format!("classification of {}", space.name))
        .field("admissible", class.admissible)
        .field(
            "labels",
            class
                .labels
                .iter()
                .map(|l| l.as_str())
                .collect::<Vec<_>>()
                .join(","),
        );
    for l in &class.labels {
        r.field(format!("label.{}", l.as_str()), l.rule());
    }
    if let Some(n) = class.curvature_norm {
        r.field("curvature_norm", n);
    }
    if let Some(d) = &data {
        r.field("drift.parallel_residual", d.drift_parallel_residual);
    }
    drift_fields(&mut r, space);
    for (k, note) in class.notes.iter().enumerate() {
        r.field(format!("note.{}", k + 1), note.as_str());
    }
    r
}

pub fn catalog_list() -> Report {
    let mut r = Report::new();
    for name in catalog::NAMES {
        r.section(name).field(
            format!("catalog.{name}"),
            catalog::describe(name).unwrap_or_default(),
        );
        for (p, v) in catalog::parameters(name).unwrap_or_default() {
            r.field(format!("catalog.{name}.param.{p}"), *v);
        }
    }
    r
}

pub fn catalog_emit(name: &str, params: &[(String, f64)]) -> Result<String, CliError> {
    let overrides: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let entry = catalog::build(name, &overrides)
        .ok_or_else(|| {
            CliError::Parse(format!(
                "unknown catalog entry `{name}` (known: {})",
                catalog::NAMES.join(", ")
            ))
        })?
        .map_err(|e| match e {
            finsler_lie::Error::UnknownParameter { .. } => CliError::Parse(e.to_string()),
            other => CliError::Invalid(other),
        })?;
    serde_json::to_string_pretty(&SpaceFile::from_catalog(&entry))
        .map_err(|e| CliError::Parse(format!("serializing {name}: {e}")))
}
