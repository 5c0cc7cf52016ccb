use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed descriptor {descriptor:?}: {reason}")]
    Descriptor { descriptor: String, reason: String },

    #[error("order {order} exceeds the enumeration cap {cap}")]
    Capacity { order: u128, cap: usize },

    #[error("element is not a member of {0}")]
    NotInGroup(String),

    #[error("subgroup is not normal in {0}")]
    NotNormal(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("incompatible specification: {0}")]
    Incompatible(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error at position {pos}: {reason}")]
    Parse { pos: usize, reason: String },

    #[error("misaligned input: {0}")]
    Misaligned(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn descriptor(descriptor: &str, reason: impl Into<String>) -> Self {
        Error::Descriptor {
            descriptor: descriptor.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(pos: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
