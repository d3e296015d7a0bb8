//! Flag-curvature statistics over many flags.
//!
//! The sweep covers every ordered pair of `m`-basis vectors followed by
//! `samples` random flags. Sample `i` draws from a ChaCha stream selected by
//! `(seed, i)`, so results do not depend on how rayon schedules the work.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use finsler_lie::matsumoto::{
    flag_report, orthonormalize_flag, CurvatureBackend, Flag, FlagOptions, KReport, MatsumotoSpace,
    Route, RouteStatus,
};
use finsler_lie::Vector;

use crate::commands::Output;
use crate::output::Report;
use crate::{CliError, Settings};

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub samples: usize,
    pub seed: u64,
    pub routes: Vec<Route>,
    pub backend: CurvatureBackend,
    pub force: bool,
}

/// Random flag number `index` of the sweep seeded with `seed`.
pub fn sample_flag(space: &MatsumotoSpace, seed: u64, index: u64) -> Flag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let m = &space.red.m_basis;
    let mut draw = || {
        m.iter().fold(Vector::zeros(space.dim()), |acc, b| {
            acc + b * rng.sample::<f64, _>(StandardNormal)
        })
    };
    loop {
        let (y, u) = (draw(), draw());
        if let Ok(flag) = orthonormalize_flag(&y, &u, space.g()) {
            return flag;
        }
    }
}

fn basis_flags(space: &MatsumotoSpace) -> Vec<Flag> {
    let m = &space.red.m_basis;
    let mut out = Vec::new();
    for a in 0..m.len() {
        for b in 0..m.len() {
            if a != b {
                if let Ok(f) = orthonormalize_flag(&m[a], &m[b], space.g()) {
                    out.push(f);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default)]
struct RouteStats {
    count: usize,
    failures: usize,
    formal: usize,
    min: f64,
    max: f64,
    sum: f64,
    first_error: Option<finsler_lie::Error>,
}

impl RouteStats {
    fn push(&mut self, k: Option<f64>, status: &RouteStatus) {
        match status {
            RouteStatus::NotApplicable { error } => {
                self.failures += 1;
                if self.first_error.is_none() {
                    self.first_error = Some(error.clone());
                }
            }
            RouteStatus::Formal => self.formal += 1,
            _ => {}
        }
        if let Some(k) = k {
            if self.count == 0 {
                self.min = k;
                self.max = k;
            } else {
                self.min = self.min.min(k);
                self.max = self.max.max(k);
            }
            self.sum += k;
            self.count += 1;
        }
    }
}

pub fn sweep(
    space: &MatsumotoSpace,
    settings: &Settings,
    opts: &SweepOptions,
) -> Result<Output, CliError> {
    let data = if space.red.is_trivial() {
        Some(space.riemannian()?)
    } else {
        None
    };
    let fopts = FlagOptions {
        routes: opts.routes.clone(),
        backend: opts.backend,
        force: opts.force,
    };
    let basis = basis_flags(space);
    let eval = |flag: &Flag| flag_report(flag, space, data.as_ref(), &fopts);
    let mut reports: Vec<KReport> = basis.iter().map(eval).collect();
    let random: Vec<KReport> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| eval(&sample_flag(space, opts.seed, i)))
        .collect();
    reports.extend(random);

    let mut stats = vec![RouteStats::default(); Route::ALL.len()];
    let mut delta: f64 = 0.0;
    for rep in &reports {
        delta = delta.max(rep.max_pairwise_delta);
        let values = rep.values();
        for (slot, route) in Route::ALL.into_iter().enumerate() {
            let k = values.iter().find(|(r, _)| *r == route).map(|(_, k)| *k);
            stats[slot].push(k, rep.status(route).expect("every route has a status"));
        }
    }

    let mut r = Report::new();
    r.section(format!("sweep over {}", space.name))
        .field("seed", opts.seed as usize)
        .field("basis_flags", basis.len())
        .field("random_flags", opts.samples)
        .field("backend", opts.backend.resolve(space).as_str());
    for (route, s) in Route::ALL.into_iter().zip(&stats) {
        let name = route.as_str();
        r.section(format!("route {name}"));
        if !opts.routes.contains(&route) {
            r.field(format!("{name}.status"), "not_requested");
            continue;
        }
        r.field(format!("{name}.count"), s.count)
            .field(format!("{name}.failures"), s.failures);
        if s.formal > 0 {
            r.field(format!("{name}.formal"), s.formal);
        }
        if s.count > 0 {
            r.field(format!("{name}.min"), s.min)
                .field(format!("{name}.max"), s.max)
                .field(format!("{name}.mean"), s.sum / s.count as f64);
        }
        if let Some(e) = &s.first_error {
            r.field(format!("{name}.error"), e.name());
        }
    }
    let agree = delta <= settings.agree;
    r.section("agreement")
        .field("max_pairwise_delta", delta)
        .field("agree", agree);

    let failure = if stats.iter().all(|s| s.count == 0) {
        Some(match stats.iter().find_map(|s| s.first_error.clone()) {
            Some(e) => CliError::Core(e),
            None => CliError::Route("no route produced a value".into()),
        })
    } else if !agree {
        Some(CliError::Route(format!(
            "routes disagree by {delta:e} (tolerance {:e})",
            settings.agree
        )))
    } else {
        None
    };
    Ok(Output { report: r, failure })
}
