use num_complex::Complex64;
use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("tilt angle {angle} rad is outside the open wedge |angle| < pi/4")]
    TiltOutOfWedge { angle: f64 },

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),

    #[error("integrand does not decay at the contour endpoints (|f(end)| = {endpoint:e}, peak {peak:e})")]
    NonDecay { endpoint: f64, peak: f64 },

    #[error("regulator epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),

    #[error("delta argument {point} leaves the convergence wedge (Re z)^2 > (Im z)^2")]
    WedgeViolation { point: Complex64 },

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("Newton iteration did not converge after {iterations} iterations (last |step| = {last_step:e})")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("unknown output format `{0}`")]
    UnknownFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
