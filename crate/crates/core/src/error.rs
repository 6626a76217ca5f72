use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degree {degree} is outside the certified range (bound {bound})")]
    OutOfCertifiedRange { degree: u32, bound: u32 },
    #[error("inhomogeneous: degrees {first} and {second} (term `{term}`)")]
    Inhomogeneous { first: u32, second: u32, term: String },
    #[error("ideal is the whole algebra")]
    WholeAlgebra,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
