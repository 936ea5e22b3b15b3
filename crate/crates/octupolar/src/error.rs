use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point too close to a pole for the angular chart (theta1 = {0})")]
    PolarChart(f64),
    #[error("vector is not of unit length (|p| = {0})")]
    NotUnitVector(f64),
    #[error("rho = {0} lies outside the admissible range [0, 2]")]
    OutsideCylinder(f64),
    #[error("tensor is identically zero")]
    ZeroTensor,
    #[error("K must be positive on the axis stratum (got {0})")]
    NonPositiveK(f64),
    #[error("solver did not converge: {0}")]
    NonConvergence(String),
    #[error("gradient norm {0:e} is too large for a critical point")]
    NotCritical(f64),
    #[error("index loop passes through a zero of the gradient")]
    LoopHitsSingularity,
    #[error("critical point is not degenerate (smallest Hessian eigenvalue {0:e})")]
    NotDegenerate(f64),
    #[error("repeated solves disagree on the critical point count at K = {k}: {counts:?}")]
    CountAmbiguous { k: f64, counts: Vec<usize> },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
