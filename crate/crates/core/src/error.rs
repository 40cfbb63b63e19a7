use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point {0} is outside [0,1)")]
    Domain(Rat),

    #[error("invalid interval: {0}")]
    Interval(String),

    #[error("invalid step function: {0}")]
    StepFunction(String),

    #[error("invalid map: {0}")]
    Map(String),

    #[error("invalid matrix: {0}")]
    Matrix(String),

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("weights must be nonnegative and sum to 1, got sum {0}")]
    WeightSum(Rat),

    #[error("cannot parse rational from {0:?}")]
    ParseRat(String),

    #[error("resource limit exceeded: {what} = {requested} > {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
