use thiserror::Error;

/// Errors raised by the attitude library.
///
/// Numeric payloads are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("observation set is empty")]
    EmptyObservationSet,

    #[error("invalid observation {index}: {reason}")]
    InvalidObservation { index: usize, reason: String },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("attitude matrix is not orthogonal (‖AᵀA − I‖_F = {deviation:e})")]
    NonOrthogonalAttitude { deviation: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    EigenNonConvergence { sweeps: usize },

    #[error("Newton iteration did not converge after {iterations} iterations (last iterate {best})")]
    NewtonNonConvergence { best: f64, iterations: usize },

    #[error("polynomial derivative vanished at x = {at}")]
    ZeroDerivative { at: f64 },

    #[error("negative radicand {value:e} in factor-pair construction")]
    NegativeRadicand { value: f64 },

    #[error("factor pair misses the linear-coefficient identity by {residual:e}")]
    ConstraintViolation { residual: f64 },

    #[error("quartic has no real root")]
    NoRealRoot,

    #[error("largest eigenvalue {lambda_max} is repeated (gap {eigenvalue_gap:e}); attitude is not unique")]
    DegenerateEigenvector { lambda_max: f64, eigenvalue_gap: f64 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
