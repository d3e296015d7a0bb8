use thiserror::Error;

/// Every failure the library can report. Variant names double as the
/// stable identifiers surfaced by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0} (must be between 1 and {max})", max = crate::lie_core::MAX_DIM)]
    InvalidDimension(usize),

    #[error("invalid bracket entry ({i}, {j}): {reason}")]
    InvalidBracket { i: usize, j: usize, reason: String },

    #[error("Jacobi identity violated: residual {residual:.3e} at basis triple {triple:?}")]
    JacobiViolation { residual: f64, triple: [usize; 3] },

    #[error("matrix is not symmetric: residual {residual:.3e} at ({row}, {col})")]
    NotSymmetric {
        residual: f64,
        row: usize,
        col: usize,
    },

    #[error("not positive definite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("generators of h are linearly dependent (generator {index})")]
    DependentGenerators { index: usize },

    #[error("h is not a subalgebra: [h_{i}, h_{j}] leaves h by {residual:.3e}")]
    NotASubalgebra { residual: f64, i: usize, j: usize },

    #[error("the Koszul route needs trivial isotropy, but dim h = {h_dim}")]
    NonTrivialIsotropy { h_dim: usize },

    #[error("reference inner product is not bi-invariant (residual {residual:.3e})")]
    ReferenceMetricNotBiInvariant { residual: f64 },

    #[error("metric is not bi-invariant (residual {residual:.3e})")]
    MetricNotBiInvariant { residual: f64 },

    #[error("vector `{name}` is not in m: h-component {residual:.3e}")]
    VectorNotInM { name: &'static str, residual: f64 },

    #[error("space is not naturally reductive: residual {residual:.3e} at triple {triple:?}")]
    NotNaturallyReductive { residual: f64, triple: [usize; 3] },

    #[error("zero vector")]
    ZeroVector,

    #[error("drift is inadmissible: sqrt<X,X> = {norm} is not below 1/2")]
    Inadmissible { norm: f64 },

    #[error("stencil point left the cone alpha - beta > 0 (alpha - beta = {margin:.3e})")]
    ConeViolation { margin: f64 },

    #[error("flag is degenerate: Y and U are linearly dependent")]
    FlagDegenerate,

    #[error("flag is not orthonormal with respect to g")]
    FlagNotOrthonormal,

    #[error("drift is not parallel: max |nabla_(e_i) X| = {residual:.3e}")]
    DriftNotParallel { residual: f64 },

    #[error("<R(U,Y)Y, Y> = {value:.3e} should vanish")]
    CurvatureSymmetry { value: f64 },

    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("unknown parameter {name}")]
    UnknownParameter { name: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short stable identifier, e.g. `DriftNotParallel`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidDimension(_) => "InvalidDimension",
            Error::InvalidBracket { .. } => "InvalidBracket",
            Error::JacobiViolation { .. } => "JacobiViolation",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::DependentGenerators { .. } => "DependentGenerators",
            Error::NotASubalgebra { .. } => "NotASubalgebra",
            Error::NonTrivialIsotropy { .. } => "NonTrivialIsotropy",
            Error::ReferenceMetricNotBiInvariant { .. } => "ReferenceMetricNotBiInvariant",
            Error::MetricNotBiInvariant { .. } => "MetricNotBiInvariant",
            Error::VectorNotInM { .. } => "VectorNotInM",
            Error::NotNaturallyReductive { .. } => "NotNaturallyReductive",
            Error::ZeroVector => "ZeroVector",
            Error::Inadmissible { .. } => "Inadmissible",
            Error::ConeViolation { .. } => "ConeViolation",
            Error::FlagDegenerate => "FlagDegenerate",
            Error::FlagNotOrthonormal => "FlagNotOrthonormal",
            Error::DriftNotParallel { .. } => "DriftNotParallel",
            Error::CurvatureSymmetry { .. } => "CurvatureSymmetry",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::UnknownParameter { .. } => "UnknownParameter",
        }
    }

    /// Structural validation failures, as opposed to violated route
    /// preconditions.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::InvalidDimension(_)
                | Error::InvalidBracket { .. }
                | Error::JacobiViolation { .. }
                | Error::NotSymmetric { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::DependentGenerators { .. }
                | Error::NotASubalgebra { .. }
                | Error::InvalidParameter { .. }
                | Error::UnknownParameter { .. }
        )
    }
}
