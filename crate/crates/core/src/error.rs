use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point {x} lies outside [{a}, {b}]")]
    Domain { x: f64, a: f64, b: f64 },

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    #[error("approximation failed at degree {degree}: last residual {residual:e}")]
    ApproximationFailure { degree: usize, residual: f64 },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Prefixes the message with `ctx`, keeping the variant.
    pub fn context(self, ctx: &str) -> Self {
        match self {
            Error::InvalidInput(m) => Error::InvalidInput(format!("{ctx}: {m}")),
            Error::Incompatible(m) => Error::Incompatible(format!("{ctx}: {m}")),
            Error::Capacity(m) => Error::Capacity(format!("{ctx}: {m}")),
            Error::Config(m) => Error::Config(format!("{ctx}: {m}")),
            other => other,
        }
    }

    /// True for errors caused by a resource ceiling rather than by bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_) | Error::ApproximationFailure { .. })
    }
}
