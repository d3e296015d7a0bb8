use super::MatsumotoSpace;
use crate::curvature::CurvatureTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Berwald,
    GeodesicallyComplete,
    Flat,
    LocallyMinkowskian,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Berwald => "berwald",
            Label::GeodesicallyComplete => "geodesically_complete",
            Label::Flat => "flat",
            Label::LocallyMinkowskian => "locally_minkowskian",
        }
    }

    /// The rule that licenses the label; nothing is proved here.
    pub fn rule(self) -> &'static str {
        match self {
            Label::Berwald => "parallel drift: Chern connection of F equals Levi-Civita of g",
            Label::GeodesicallyComplete => {
                "homogeneous Riemannian g with Berwald-type F is geodesically complete (left-invariant g, parallel X)"
            }
            Label::Flat => "Riemann tensor of g vanishes, hence so does that of F",
            Label::LocallyMinkowskian => "flat Berwald metrics are locally Minkowskian",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub admissible: bool,
    pub labels: Vec<Label>,
    /// Max-norm of `R`, when a curvature tensor was supplied.
    pub curvature_norm: Option<f64>,
    pub notes: Vec<String>,
}

impl Classification {
    pub fn has(&self, label: Label) -> bool {
        self.labels.contains(&label)
    }
}

/// Labels the space from the facts supplied: whether the drift is parallel
/// and, when available, the Riemann tensor of `g`.
///
/// An inadmissible drift does not define a Finsler metric, so it gets no
/// labels.
pub fn classify_space(
    space: &MatsumotoSpace,
    r: Option<&CurvatureTensor>,
    parallel_ok: bool,
) -> Classification {
    let mut out = Classification {
        admissible: space.admissible,
        labels: Vec::new(),
        curvature_norm: r.map(CurvatureTensor::max_norm),
        notes: Vec::new(),
    };
    if !space.admissible {
        out.notes.push(format!(
            "sqrt<X,X> = {} is not below 1/2; F is not a Finsler metric",
            space.x_norm
        ));
        return out;
    }
    if parallel_ok {
        out.labels.push(Label::Berwald);
        out.labels.push(Label::GeodesicallyComplete);
    } else {
        out.notes
            .push("drift is not parallel; curvature identification unavailable".into());
    }
    match out.curvature_norm {
        Some(norm) if norm <= space.tol => {
            out.labels.push(Label::Flat);
            if parallel_ok {
                out.labels.push(Label::LocallyMinkowskian);
            }
        }
        Some(_) => {}
        None => out
            .notes
            .push("no curvature tensor supplied; flatness not decided".into()),
    }
    if !space.red.is_trivial() {
        out.notes
            .push(format!("Ad(H)-invariance {}", space.red.ad_h_invariance()));
    }
    out
}

#[cfg(test)]
mod tests {
    use nalgebra::DVector;

    use super::*;
    use crate::lie_core::{BracketEntry, InnerProduct, LieAlgebra, DEFAULT_STRUCTURAL_TOL as TOL};

    fn e2(u: f64) -> MatsumotoSpace {
        let alg = LieAlgebra::new(
            3,
            &[
                BracketEntry::new(1, 2, [1.0, 0.0, 0.0]),
                BracketEntry::new(0, 2, [0.0, -1.0, 0.0]),
            ],
            TOL,
        )
        .unwrap();
        let g = InnerProduct::identity(3);
        MatsumotoSpace::from_parts(
            "e2",
            alg,
            &g,
            &g,
            &[],
            DVector::from_column_slice(&[0., 0., u]),
            TOL,
        )
        .unwrap()
    }

    #[test]
    fn e2_full_labels() {
        let s = e2(0.3);
        let data = s.riemannian().unwrap();
        let c = classify_space(&s, Some(&data.curvature), data.drift_is_parallel(&s));
        assert_eq!(
            c.labels,
            vec![
                Label::Berwald,
                Label::GeodesicallyComplete,
                Label::Flat,
                Label::LocallyMinkowskian
            ]
        );
    }

    #[test]
    fn inadmissible_gets_nothing() {
        let s = e2(0.5);
        let data = s.riemannian().unwrap();
        let c = classify_space(&s, Some(&data.curvature), true);
        assert!(c.labels.is_empty());
        assert!(!c.admissible);
    }

    #[test]
    fn unknown_flatness() {
        let s = e2(0.1);
        let c = classify_space(&s, None, true);
        assert_eq!(c.labels, vec![Label::Berwald, Label::GeodesicallyComplete]);
        assert!(c.notes.iter().any(|n| n.contains("flatness")));
    }
}
