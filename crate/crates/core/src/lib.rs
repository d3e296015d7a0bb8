//! Invariant Matsumoto metrics `F = α²/(α − β)` on Lie groups and reductive
//! homogeneous spaces, evaluated entirely from Lie-algebra data.
//!
//! The crate is organised bottom-up:
//!
//! - [`lie_core`]: structure constants, inner products, the endomorphism
//!   `φ` with `<u,v> = <φu,v>_0`, and reductive splittings `g = h ⊕ m`.
//! - [`curvature`]: Levi-Civita connection via the Koszul formula, the
//!   Riemann tensor, parallel invariant fields, and closed-form curvature
//!   pairings for bi-invariant reference metrics, naturally reductive spaces
//!   and bi-invariant metrics.
//! - [`matsumoto`]: the metric `F`, its fundamental tensor `g_Y` (closed form
//!   and a finite-difference oracle), flag curvature by several independent
//!   routes, and the completeness/flatness classifier.
//! - [`catalog`]: worked example spaces with their expected results.
//!
//! Curvature convention throughout:
//! `R(U,Y)Z = ∇_U ∇_Y Z − ∇_Y ∇_U Z − ∇_[U,Y] Z`, so the round sphere has
//! `<R(U,Y)Y, U> > 0`.

// `!(x > 0.0)` is how the positivity checks also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod curvature;
pub mod error;
pub mod lie_core;
pub mod matsumoto;

pub use error::{Error, Result};

pub type Vector = nalgebra::DVector<f64>;
pub type Matrix = nalgebra::DMatrix<f64>;
