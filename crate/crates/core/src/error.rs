use thiserror::Error;

pub type Result<T> = std::result::Result<T, BrikError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrikError {
    /// A configured resource limit would be exceeded.
    #[error("{resource} cap exceeded: requested {requested}, cap is {cap}")]
    CapExceeded {
        resource: &'static str,
        cap: String,
        requested: String,
    },

    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The exact value exists but cannot be held in memory.
    #[error("representation error: {0}")]
    Representation(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
}

impl BrikError {
    pub(crate) fn cap(
        resource: &'static str,
        cap: impl ToString,
        requested: impl ToString,
    ) -> Self {
        BrikError::CapExceeded {
            resource,
            cap: cap.to_string(),
            requested: requested.to_string(),
        }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, BrikError::CapExceeded { .. })
    }
}
