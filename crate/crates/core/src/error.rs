use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid valuation {0}: must be positive")]
    InvalidValuation(Box<Rational>),

    #[error(
        "invalid valuations v1 = {v1}, v2 = {v2}: need v1 >= v2 > 0 \
         (swap the players so that player 1 has the higher valuation)"
    )]
    InvalidValuations { v1: Box<Rational>, v2: Box<Rational> },

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("parameters do not match case {expected}: got {got}")]
    ParamsCaseMismatch { expected: String, got: String },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
