//! Lie algebras in a fixed basis, invariant inner products, and reductive
//! decompositions `g = h ⊕ m`.
//!
//! Everything here is immutable after construction. Constructors validate
//! the structural identities the rest of the crate relies on (Jacobi,
//! symmetry, positive definiteness, subalgebra closure) against an explicit
//! tolerance, and failures name the worst-offending basis indices.

mod algebra;
mod metric;
mod reductive;

pub use algebra::{BracketEntry, JacobiReport, LieAlgebra};
pub use metric::{
    check_bi_invariance, phi_from_metrics, BiInvarianceReport, InnerProduct, MetricPack,
};
pub use reductive::{reductive_split, ReductiveStructure};

pub const MAX_DIM: usize = 32;

/// Cutoff used for exact algebraic identities evaluated in floating point.
pub const DEFAULT_STRUCTURAL_TOL: f64 = 1e-9;

pub(crate) fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |m, v| m.max(v.abs()))
}
