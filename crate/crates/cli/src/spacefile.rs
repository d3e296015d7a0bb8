//! The JSON space description read by every verb.
//!
//! Bracket indices are 1-based in the file. Matrices are row-major arrays of
//! rows.

use serde::{Deserialize, Serialize};

use finsler_lie::catalog::CatalogEntry;
use finsler_lie::lie_core::{BracketEntry, InnerProduct, LieAlgebra, DEFAULT_STRUCTURAL_TOL};
use finsler_lie::matsumoto::MatsumotoSpace;
use finsler_lie::{Matrix, Vector};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub name: String,
    pub dim: usize,
    /// Optional basis names; `e1, e2, ...` otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub brackets: Vec<BracketSpec>,
    /// Reference inner product; defaults to `g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g0: Option<Vec<Vec<f64>>>,
    pub g: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h_basis: Vec<Vec<f64>>,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structural: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
}

pub fn parse(text: &str) -> Result<SpaceFile, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: SpaceFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::Parse(inner.to_string())
        } else {
            CliError::Parse(format!("field `{path}`: {inner}"))
        }
    })?;
    serde_json::Deserializer::from_str(text)
        .into_iter::<serde_json::Value>()
        .nth(1)
        .map_or(Ok(()), |_| {
            Err(CliError::Parse(
                "trailing content after the space document".into(),
            ))
        })?;
    Ok(file)
}

pub fn read(path: &std::path::Path) -> Result<SpaceFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse(&text)
}

fn matrix(rows: &[Vec<f64>], dim: usize) -> Result<Matrix, finsler_lie::Error> {
    if rows.len() != dim {
        return Err(finsler_lie::Error::DimensionMismatch {
            expected: dim,
            found: rows.len(),
        });
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
        return Err(finsler_lie::Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    Ok(Matrix::from_fn(dim, dim, |r, c| rows[r][c]))
}

fn vector(v: &[f64], dim: usize) -> Result<Vector, finsler_lie::Error> {
    if v.len() != dim {
        return Err(finsler_lie::Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    Ok(Vector::from_column_slice(v))
}

impl SpaceFile {
    /// Builds and validates the space. Indices become 0-based; `[e_j, e_i]`
    /// entries are turned into `[e_i, e_j]` with negated coefficients.
    pub fn build(&self, tol: f64) -> Result<MatsumotoSpace, CliError> {
        if let Some(names) = &self.basis {
            let bad = |n: &String| {
                n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            };
            if let Some(k) = names.iter().position(bad) {
                return Err(CliError::Parse(format!(
                    "field `basis[{k}]`: names must be non-empty and use only letters, digits and underscores"
                )));
            }
        }
        let brackets = self
            .brackets
            .iter()
            .enumerate()
            .map(|(n, b)| {
                if b.i == 0 || b.j == 0 {
                    return Err(CliError::Parse(format!(
                        "field `brackets[{n}]`: indices are 1-based"
                    )));
                }
                Ok(if b.i > b.j {
                    BracketEntry::new(
                        b.j - 1,
                        b.i - 1,
                        b.coeffs.iter().map(|c| -c).collect::<Vec<_>>(),
                    )
                } else {
                    BracketEntry::new(b.i - 1, b.j - 1, b.coeffs.clone())
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let build = || -> finsler_lie::Result<MatsumotoSpace> {
            let mut alg = LieAlgebra::new(self.dim, &brackets, tol)?;
            if let Some(names) = &self.basis {
                alg = alg.with_names(names.iter().cloned())?;
            }
            let g = InnerProduct::new(matrix(&self.g, self.dim)?, tol)?;
            let g0 = match &self.g0 {
                Some(rows) => InnerProduct::new(matrix(rows, self.dim)?, tol)?,
                None => g.clone(),
            };
            let h = self
                .h_basis
                .iter()
                .map(|v| vector(v, self.dim))
                .collect::<finsler_lie::Result<Vec<_>>>()?;
            let x = match &self.x {
                Some(x) => vector(x, self.dim)?,
                None => Vector::zeros(self.dim),
            };
            MatsumotoSpace::from_parts(self.name.clone(), alg, &g0, &g, &h, x, tol)
        };
        build().map_err(CliError::Invalid)
    }

    /// The file that reproduces a built space.
    pub fn from_space(space: &MatsumotoSpace) -> Self {
        let n = space.dim();
        let alg = &space.alg;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: Vec<f64> = (0..n).map(|k| alg.structure_constant(k, i, j)).collect();
                if coeffs.iter().any(|&c| c != 0.0) {
                    brackets.push(BracketSpec {
                        i: i + 1,
                        j: j + 1,
                        coeffs,
                    });
                }
            }
        }
        let rows = |m: &Matrix| -> Vec<Vec<f64>> {
            m.row_iter().map(|r| r.iter().copied().collect()).collect()
        };
        let g = rows(space.pack.g.matrix());
        let g0 = rows(space.pack.g0.matrix());
        let default_names = (1..=n).map(|k| format!("e{k}")).collect::<Vec<_>>();
        Self {
            name: space.name.clone(),
            dim: n,
            basis: (alg.basis_names() != default_names.as_slice())
                .then(|| alg.basis_names().to_vec()),
            brackets,
            g0: (g0 != g).then_some(g0),
            g,
            h_basis: space
                .red
                .h_basis
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect(),
            x: space
                .drift
                .iter()
                .any(|&c| c != 0.0)
                .then(|| space.drift.iter().copied().collect()),
            tolerances: (space.tol != DEFAULT_STRUCTURAL_TOL).then_some(Tolerances {
                structural: Some(space.tol),
                ..Tolerances::default()
            }),
        }
    }

    pub fn from_catalog(entry: &CatalogEntry) -> Self {
        Self::from_space(&entry.space)
    }
}
