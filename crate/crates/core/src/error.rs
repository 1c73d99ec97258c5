use thiserror::Error;

/// Errors produced when constructing or loading domain values.
///
/// Constraint checking on distributions never errors; it produces a
/// [`ConstraintReport`](crate::probability::ConstraintReport) instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {name} = {value} is outside [0, 1]")]
    ProbabilityOutOfRange { name: String, value: f64 },

    #[error("measurement angle {index} is not finite")]
    NonFiniteAngle { index: usize },

    #[error("schmidt angle {0} is outside [0, pi/2]")]
    SchmidtAngleOutOfRange(f64),

    #[error("local model weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },

    #[error("local model weights sum to {0}, expected 1")]
    WeightsNotNormalized(f64),

    #[error("game coefficient {0} is not finite")]
    NonFiniteCoefficient(String),

    #[error("strategy probability {name} = {value} is outside [0, 1]")]
    StrategyOutOfRange { name: &'static str, value: f64 },

    #[error("distribution fails validation: {0}")]
    InvalidDistribution(String),

    #[error("simulation needs at least one run")]
    EmptySimulation,

    #[error("malformed JSON: {0}")]
    Json(serde_json::Error),

    #[error("malformed document: {0}")]
    Document(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err)
    }
}
