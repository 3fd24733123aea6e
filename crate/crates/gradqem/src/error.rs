use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular matrix: pivot {pivot:.3e} below threshold {threshold:.3e}")]
    Singular { pivot: f64, threshold: f64 },

    #[error("matrix is not symmetric (relative asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("negative eigenvalue {0:.6e} beyond tolerance; assembly is inconsistent")]
    NegativeEigenvalue(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
