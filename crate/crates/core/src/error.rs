use thiserror::Error;

/// Errors raised by model construction, engine queries and the numeric layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown coefficient theory `{0}` (expected MU, HZ, HQ or MUQ)")]
    UnknownTheory(String),

    #[error("negative rank {rank} for pi_{{2j}} at j = {degree}")]
    NegativeRank { degree: i64, rank: i64 },

    #[error("model `{model}` violates invariant: {detail}")]
    Invariant { model: String, detail: String },

    #[error("model `{model}` has torsion in H^{degree}; {reason}")]
    Torsion {
        model: String,
        degree: usize,
        reason: String,
    },

    #[error("model `{0}` is not compact Kaehler; the analytic variant needs Hodge numbers")]
    NotKahler(String),

    #[error("model `{0}` carries no ring presentation")]
    MissingRing(String),

    #[error("projective bundle rank must be at least 1")]
    ZeroBundleRank,

    #[error("sum over coefficient degrees is unbounded: {0}")]
    Unbounded(String),

    #[error("singular curve: discriminant g2^3 - 27 g3^2 vanishes")]
    SingularCurve,

    #[error("point ({x}, {y}) is not on the curve (residual {residual:e})")]
    OffCurve { x: String, y: String, residual: f64 },

    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(i64),

    #[error("parse error at {location}: {detail}")]
    Parse { location: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invariant(model: &str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            model: model.to_string(),
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(location: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            detail: detail.into(),
        }
    }
}
