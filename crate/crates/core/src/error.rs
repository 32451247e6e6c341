use thiserror::Error;

/// Failures raised by the numeric kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-increasing parameter spacing at sample {index}")]
    DegenerateSpacing { index: usize },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("curvature {value:e} at sample {index} is not positive")]
    NonConvexCurve { index: usize, value: f64 },
    #[error("area forms disagree: x dy gives {xdy}, symmetric form gives {symmetric} (tolerance {tol:e})")]
    FormMismatch { xdy: f64, symmetric: f64, tol: f64 },
    #[error("threshold violated: {0}")]
    ThresholdViolation(String),
    #[error("no bracket found below L = {cap:e}")]
    NoBracket { cap: f64 },
    #[error("variation left the admissible class: {0}")]
    AdmissibilityLost(String),
    #[error("Newton iteration stalled after {iterations} iterations (residual {residual:e})")]
    NewtonStall { iterations: usize, residual: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no determinant root below mu = {cap}")]
    RootNotFound { cap: f64 },
    #[error("singular quadratic form: {0}")]
    SingularForm(String),
    #[error("curve is not convex: curvature {value:e} at sample {index}")]
    NotConvex { index: usize, value: f64 },
    #[error("vertical velocity changes sign {count} times, expected a single apex")]
    MultipleApexes { count: usize },
    #[error("second derivative {value:e} below floor at grid node {index}")]
    DegenerateCurvature { index: usize, value: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
