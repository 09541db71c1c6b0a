use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Inadmissible parameters: the message names the violated constraint.
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("operands belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("construction error: {0}")]
    Construction(String),

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    /// An exhaustive search would exceed the configured budget.
    #[error("search infeasible: {what} needs about {estimate} steps (limit {limit}); {hint}")]
    Infeasible {
        what: String,
        estimate: f64,
        limit: f64,
        hint: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A repair schedule asked for a symbol that is not available.
    #[error("repair integrity error: {0}")]
    Integrity(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
