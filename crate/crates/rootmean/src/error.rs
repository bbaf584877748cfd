use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unbound symbol {0} in substitution")]
    UnboundSymbol(String),

    #[error("parameter vector of length {len} cannot be truncated by {by}")]
    Truncation { len: usize, by: usize },

    #[error("parameter vector of length {len} is shorter than degree {degree}")]
    ShortVector { len: usize, degree: u32 },

    #[error("invalid key (D={d}, delta={delta}, rho={rho}): {reason}")]
    InvalidKey {
        d: u32,
        delta: i64,
        rho: i64,
        reason: &'static str,
    },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("relation does not vanish: {0}")]
    NotARelation(String),

    #[error("root finder did not converge (best residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("not polynomial at this degree: {0}")]
    NotPolynomial(String),

    #[error("structural form failure: {0}")]
    Structure(String),

    #[error("search too large: {0}")]
    TooLarge(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
