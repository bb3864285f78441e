use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("need at least {need} vertices, graph has {n}")]
    TooFewVertices { n: usize, need: usize },
    #[error("size {got} exceeds supported bound {max}")]
    TooLarge { got: usize, max: usize },
    #[error("flag shape mismatch: ({0},{1}) vs ({2},{3})")]
    FlagShape(usize, usize, usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("infeasible point: {0}")]
    Infeasible(String),
    #[error("no convergence after all starts, best residual {0:e}")]
    NoConvergence(f64),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
