use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in {context}: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)]
    Shape { context: String, left: (usize, usize), right: (usize, usize) },

    #[error("{0}")]
    Invalid(String),

    #[error("map is not {property}: first violation at basis index {witness:?}")]
    NotLinear { property: String, witness: Vec<usize> },

    #[error("image of {what} leaves the target subspace at column {column}")]
    Containment { what: String, column: usize },

    #[error("nonzero curvature: first nonzero column {column}")]
    Curvature { column: usize },

    #[error("{line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
