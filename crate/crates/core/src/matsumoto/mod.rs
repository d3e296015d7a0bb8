//! The Matsumoto metric `F = α²/(α − β)` induced by an invariant metric and
//! an invariant drift, its fundamental tensor, and its flag curvature.

mod classify;
mod flag;
mod flag_curvature;
mod fundamental;
mod space;

pub use classify::{classify_space, Classification, Label};
pub use flag::{orthonormalize_flag, Flag, DEGENERACY_SINE};
pub use flag_curvature::{
    curvature_pairings, flag_curvature_bi_invariant, flag_curvature_closed,
    flag_curvature_closed_route, flag_curvature_direct, flag_denominator_closed,
    flag_numerator_closed, flag_numerator_expanded, flag_report, CurvatureBackend, DirectCurvature,
    FlagOptions, KReport, Route, RouteStatus,
};
pub use fundamental::{fundamental_tensor, fundamental_tensor_fd, DEFAULT_FD_STEP};
pub use space::{
    admissible, coefficient_bound, finsler_norm, unit_max_coordinate, Admissibility,
    MatsumotoSpace, RiemannianData,
};
