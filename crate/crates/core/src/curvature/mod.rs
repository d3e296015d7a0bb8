//! Levi-Civita connection and Riemann tensor of invariant metrics computed
//! from structure constants, parallel invariant fields, and closed-form
//! curvature pairings.
//!
//! The Koszul route works on the group itself (trivial isotropy). On a
//! quotient `G/H` the supported routes are the closed-form pairings, which
//! need a bi-invariant reference product, and the naturally reductive
//! shortcut.

mod closed_form;
mod connection;
mod parallel;
mod tensor;

pub use closed_form::{
    bi_invariant_curvature, nat_red_curvature, naturally_reductive_check, A_term, A_term_with,
    B_term, B_term_with, MixedPairing, NaturalReductivity,
};
pub use connection::{koszul_connection, ConnectionBackend, ConnectionTable};
pub use parallel::{parallel_fields, ParallelFields, NULLSPACE_REL_CUTOFF};
pub use tensor::{curvature_tensor, CurvatureTensor, SymmetryResiduals};
