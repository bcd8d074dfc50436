use thiserror::Error;

use crate::covering::{DatumViolation, VectorViolation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group: {0}")]
    MalformedGroup(String),

    #[error("element {element:?} is not an element of {group}")]
    InvalidElement { element: Vec<u32>, group: String },

    #[error("group of order {order} exceeds the ceiling {ceiling}")]
    CeilingExceeded { order: u32, ceiling: u32 },

    #[error("branching type {btype} admits no integral genus for a group of order {order}")]
    NonIntegralGenus { order: u32, btype: String },

    #[error("invalid generating vector: {0}")]
    InvalidVector(VectorViolation),

    #[error("{0}")]
    InvalidDatum(DatumViolation),

    #[error("not a variety isogenous to a product: curve {slot} has genus {genus}")]
    NotVip { slot: usize, genus: u32 },

    #[error("unsupported input: {0}")]
    Scope(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A bug trap fired: some identity that must hold for valid input did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

impl From<VectorViolation> for Error {
    fn from(v: VectorViolation) -> Self {
        Error::InvalidVector(v)
    }
}

impl From<DatumViolation> for Error {
    fn from(v: DatumViolation) -> Self {
        Error::InvalidDatum(v)
    }
}
